// Copyright 2026 The Prosody Labeling Toolkit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cctype>
#include <sstream>

#include "prosody/augment.hpp"

namespace prosody {

namespace {

bool is_mark(char c) { return c == ',' || c == '.' || c == '!' || c == '?'; }

bool is_word_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '\'' ||
         static_cast<unsigned char>(c) >= 0x80;
}

bool parse_label_token(std::string_view tok, char kind, int &cls) {
  if (tok.size() != 4 || tok[0] != '<' || tok[1] != kind || tok[3] != '>') return false;
  if (tok[2] < '0' || tok[2] > '2') return false;
  cls = tok[2] - '0';
  return true;
}

void check_class(int c, const char *what) {
  if (c < 0 || c > 2) throw Error(std::string(what) + " class " + std::to_string(c) + " not in 0..2");
}

} // namespace

std::vector<std::string> Transcript::words() const {
  std::vector<std::string> out;
  for (const auto &t : tokens)
    if (t.kind == TranscriptToken::Kind::word) out.push_back(t.text);
  return out;
}

Transcript tokenize_transcript(std::string_view text, std::string utterance_id) {
  Transcript t;
  t.utterance_id = std::move(utterance_id);
  std::size_t i = 0;
  while (i < text.size()) {
    const char c = text[i];
    if (is_word_char(c)) {
      std::size_t j = i;
      while (j < text.size() && is_word_char(text[j])) ++j;
      t.tokens.push_back({TranscriptToken::Kind::word, std::string(text.substr(i, j - i))});
      i = j;
      continue;
    }
    if (is_mark(c)) {
      const bool after_word = !t.tokens.empty() && t.tokens.back().kind == TranscriptToken::Kind::word;
      if (after_word)
        t.tokens.push_back({TranscriptToken::Kind::punct, std::string(1, c)});
      else
        t.dropped.push_back(c);
    } else if (!std::isspace(static_cast<unsigned char>(c))) {
      t.dropped.push_back(c);
    }
    ++i;
  }
  return t;
}

std::string fold_word(std::string_view word) {
  std::string out;
  for (char c : word)
    if (is_word_char(c)) out.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  return out;
}

std::vector<std::string> phonemize(std::string_view word, const Lexicon &lexicon, OovPolicy policy) {
  if (word.empty()) throw Error("cannot phonemize an empty word");
  if (const auto *pron = lexicon.lookup(word)) return *pron;
  if (policy == OovPolicy::error) throw Error("out-of-lexicon word '" + std::string(word) + "'");
  std::vector<std::string> out;
  for (char c : word)
    if (std::isalnum(static_cast<unsigned char>(c)))
      out.emplace_back(1, static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  if (out.empty()) throw Error("no graphemes to fall back on for '" + std::string(word) + "'");
  return out;
}

std::string augment_transcript(const Transcript &transcript,
                               const std::vector<WordAnnotation> &annotations,
                               const Lexicon &lexicon, OovPolicy policy) {
  const auto words = transcript.words();
  const std::size_t common = std::min(words.size(), annotations.size());
  for (std::size_t k = 0; k < common; ++k) {
    if (fold_word(words[k]) != fold_word(annotations[k].word))
      throw Error("word-sequence mismatch at index " + std::to_string(k) + " ('" + words[k] +
                  "' vs '" + annotations[k].word + "')");
  }
  if (words.size() != annotations.size())
    throw Error("word-sequence mismatch at index " + std::to_string(common));

  std::string out;
  auto emit = [&out](std::string_view sym) {
    if (!out.empty()) out.push_back(' ');
    out += sym;
  };
  std::size_t k = 0;
  const auto &tokens = transcript.tokens;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (tokens[i].kind != TranscriptToken::Kind::word) continue;
    const auto &ann = annotations[k++];
    check_class(ann.p_class, "prominence");
    check_class(ann.b_class, "boundary");
    emit("<p" + std::to_string(ann.p_class) + ">");
    for (const auto &ph : phonemize(tokens[i].text, lexicon, policy)) emit(ph);
    if (i + 1 < tokens.size() && tokens[i + 1].kind == TranscriptToken::Kind::punct)
      emit(tokens[i + 1].text);
    emit("<b" + std::to_string(ann.b_class) + ">");
  }
  return out;
}

std::vector<AugmentedWord> parse_augmented(std::string_view s) {
  std::vector<AugmentedWord> out;
  bool open = false;
  std::istringstream in{std::string(s)};
  std::size_t pos = 0;
  for (std::string tok; in >> tok; ++pos) {
    int cls = 0;
    const std::string where = " at token " + std::to_string(pos);
    if (parse_label_token(tok, 'p', cls)) {
      if (open) throw Error("missing boundary token" + where);
      out.push_back({});
      out.back().p_class = cls;
      open = true;
    } else if (parse_label_token(tok, 'b', cls)) {
      if (!open) throw Error("boundary token without a word" + where);
      if (out.back().phones.empty()) throw Error("word without phones" + where);
      out.back().b_class = cls;
      open = false;
    } else if (tok.front() == '<') {
      throw Error("unknown token '" + tok + "'" + where);
    } else if (tok.size() == 1 && is_mark(tok[0])) {
      if (!open) throw Error("punctuation before prominence token" + where);
      if (out.back().punct) throw Error("repeated punctuation" + where);
      if (out.back().phones.empty()) throw Error("punctuation before phones" + where);
      out.back().punct = tok[0];
    } else {
      if (!open) throw Error("phones before prominence token" + where);
      if (out.back().punct) throw Error("phones after punctuation" + where);
      out.back().phones.push_back(tok);
    }
  }
  if (open) throw Error("missing boundary token at end of input");
  return out;
}

LabelOverrides parse_overrides(std::string_view jsonl) {
  LabelOverrides out;
  std::istringstream in{std::string(jsonl)};
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      const auto j = nlohmann::json::parse(line);
      std::vector<std::pair<int, int>> labels;
      for (const auto &pb : j.at("labels")) {
        if (!pb.is_array() || pb.size() != 2) throw Error("each label must be [p, b]");
        labels.emplace_back(pb[0].get<int>(), pb[1].get<int>());
        check_class(labels.back().first, "prominence");
        check_class(labels.back().second, "boundary");
      }
      out[j.at("id").get<std::string>()] = std::move(labels);
    } catch (const std::exception &e) {
      throw Error("override line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  return out;
}

std::vector<WordAnnotation> annotations_from_override(const Transcript &transcript,
                                                      const std::vector<std::pair<int, int>> &labels) {
  const auto words = transcript.words();
  if (words.size() != labels.size())
    throw Error("override for '" + transcript.utterance_id + "' has " +
                std::to_string(labels.size()) + " labels for " + std::to_string(words.size()) +
                " words");
  std::vector<WordAnnotation> out(words.size());
  for (std::size_t i = 0; i < words.size(); ++i) {
    out[i].word = words[i];
    out[i].p_class = labels[i].first;
    out[i].b_class = labels[i].second;
  }
  return out;
}

std::vector<Transcript> parse_transcripts(std::string_view text) {
  std::vector<Transcript> out;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<std::string> fields;
    const char sep = line.find('|') != std::string::npos ? '|' : '\t';
    std::size_t start = 0;
    while (true) {
      auto at = line.find(sep, start);
      fields.push_back(line.substr(start, at - start));
      if (at == std::string::npos) break;
      start = at + 1;
    }
    if (fields.size() < 2) throw Error("transcript line without text: '" + line + "'");
    out.push_back(tokenize_transcript(fields.back(), fields.front()));
  }
  return out;
}

} // namespace prosody
