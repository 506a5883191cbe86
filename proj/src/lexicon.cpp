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

#include "prosody/ingest.hpp"

namespace prosody {

namespace {

std::string fold(std::string_view s) {
  std::string out(s);
  for (auto &c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

} // namespace

void Lexicon::add(std::string_view word, Pronunciation pron) {
  for (const auto &ph : pron)
    if (ph.empty()) throw Error("empty phone symbol for '" + std::string(word) + "'");
  entries_[fold(word)].push_back(std::move(pron));
}

const Pronunciation *Lexicon::lookup(std::string_view word) const {
  auto it = entries_.find(fold(word));
  return it == entries_.end() ? nullptr : &it->second.front();
}

const std::vector<Pronunciation> *Lexicon::alternatives(std::string_view word) const {
  auto it = entries_.find(fold(word));
  return it == entries_.end() ? nullptr : &it->second;
}

Lexicon parse_lexicon(std::string_view text) {
  Lexicon lex;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.starts_with(";;;")) continue;
    std::istringstream fields(line);
    std::string word;
    if (!(fields >> word)) continue;
    // Alternates are written WORD(2), WORD(3), ...
    if (auto paren = word.find('('); paren != std::string::npos && paren > 0 && word.back() == ')')
      word.resize(paren);
    Pronunciation pron;
    for (std::string ph; fields >> ph;) pron.push_back(fold(ph));
    if (pron.empty())
      throw Error("lexicon line " + std::to_string(lineno) + ": no phones for '" + word + "'");
    lex.add(word, std::move(pron));
  }
  return lex;
}

Lexicon load_lexicon(const std::filesystem::path &path) {
  try {
    return parse_lexicon(read_file(path));
  } catch (const Error &e) {
    throw Error(path.string() + ": " + e.what());
  }
}

} // namespace prosody
