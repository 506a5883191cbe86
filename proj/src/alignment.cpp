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

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdio>
#include <sstream>

#include "prosody/ingest.hpp"

namespace prosody {

namespace {

constexpr double kTimeEps = 1e-9;

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::string lower(std::string_view s) {
  std::string out(s);
  for (auto &c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

double parse_double(std::string_view s, std::string_view what) {
  s = trim(s);
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size())
    throw Error("bad number '" + std::string(s) + "' in " + std::string(what));
  return v;
}

std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    std::string_view line = text.substr(pos, nl - pos);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    lines.push_back(line);
    pos = nl + 1;
  }
  return lines;
}

// Unquotes a TextGrid string literal ("" is an escaped quote).
std::string unquote(std::string_view v) {
  v = trim(v);
  if (v.size() < 2 || v.front() != '"' || v.back() != '"')
    throw Error("expected quoted string, got '" + std::string(v) + "'");
  v = v.substr(1, v.size() - 2);
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    out.push_back(v[i]);
    if (v[i] == '"' && i + 1 < v.size() && v[i + 1] == '"') ++i;
  }
  return out;
}

void check_tier(const std::vector<Interval> &tier, std::string_view name) {
  for (std::size_t i = 0; i < tier.size(); ++i) {
    const auto &iv = tier[i];
    if (!(iv.start >= 0.0) || !(iv.start < iv.end))
      throw Error(std::string(name) + " tier: invalid interval at index " + std::to_string(i));
    if (i == 0) continue;
    const auto &prev = tier[i - 1];
    if (iv.start < prev.start)
      throw Error(std::string(name) + " tier: decreasing intervals at index " + std::to_string(i));
    if (iv.start < prev.end - kTimeEps)
      throw Error(std::string(name) + " tier: overlapping intervals at index " +
                  std::to_string(i));
  }
}

void normalize_labels(std::vector<Interval> &tier) {
  for (auto &iv : tier) {
    std::string_view t = trim(iv.label);
    iv.label = is_silence_label(t) ? std::string(kSilence) : std::string(t);
  }
}

} // namespace

bool is_silence_label(std::string_view label) {
  std::string l = lower(trim(label));
  return l.empty() || l == "sil" || l == "sp" || l == "<eps>";
}

double Alignment::end_time() const {
  double t = 0.0;
  if (!words.empty()) t = words.back().end;
  if (!phones.empty()) t = std::max(t, phones.back().end);
  return t;
}

std::vector<const WordInterval *> Alignment::spoken_words() const {
  std::vector<const WordInterval *> out;
  for (const auto &w : words)
    if (!w.is_silence()) out.push_back(&w);
  return out;
}

std::vector<Interval> Alignment::pauses() const {
  std::vector<Interval> out;
  double cursor = 0.0;
  for (const auto &w : words) {
    if (w.start > cursor + 1e-6) out.push_back({std::string(kSilence), cursor, w.start});
    if (w.is_silence()) out.push_back({w.label, w.start, w.end});
    cursor = w.end;
  }
  return out;
}

Alignment build_alignment(std::string utterance_id, std::vector<Interval> words,
                          std::vector<Interval> phones) {
  normalize_labels(words);
  normalize_labels(phones);
  check_tier(words, "words");
  check_tier(phones, "phones");

  Alignment out;
  out.utterance_id = std::move(utterance_id);
  out.phones = std::move(phones);
  out.words.reserve(words.size());
  for (auto &w : words) {
    WordInterval wi;
    static_cast<Interval &>(wi) = std::move(w);
    out.words.push_back(std::move(wi));
  }

  // Both tiers are sorted, so containment linking is a merge.
  std::size_t w = 0;
  std::vector<std::ptrdiff_t> owner(out.phones.size(), -1);
  for (std::size_t p = 0; p < out.phones.size(); ++p) {
    const double mid = out.phones[p].midpoint();
    while (w < out.words.size() && out.words[w].end <= mid) ++w;
    if (w < out.words.size() && out.words[w].start <= mid) {
      owner[p] = static_cast<std::ptrdiff_t>(w);
    } else if (!out.phones[p].is_silence()) {
      throw Error("phone '" + out.phones[p].label + "' at index " + std::to_string(p) +
                  " not covered by any word or silence");
    }
  }

  // Owners are non-decreasing, so each word's phones form one contiguous run.
  std::size_t p = 0;
  for (std::size_t wi = 0; wi < out.words.size(); ++wi) {
    const auto id = static_cast<std::ptrdiff_t>(wi);
    while (p < owner.size() && (owner[p] < 0 || owner[p] < id) &&
           out.phones[p].midpoint() < out.words[wi].start)
      ++p;
    auto &word = out.words[wi];
    word.phone_begin = p;
    while (p < owner.size() && owner[p] == id) ++p;
    word.phone_end = p;
  }
  return out;
}

Alignment parse_textgrid(std::string_view text, std::string utterance_id) {
  struct Tier {
    std::string name;
    bool interval = false;
    std::vector<Interval> items;
  };
  std::vector<Tier> tiers;
  bool in_interval = false;

  for (std::string_view raw : split_lines(text)) {
    std::string_view line = trim(raw);
    if (line.empty()) continue;
    if (line.starts_with("item [") && line.find("]:") != std::string_view::npos &&
        !line.starts_with("item []")) {
      tiers.emplace_back();
      in_interval = false;
      continue;
    }
    if (tiers.empty()) continue;
    Tier &tier = tiers.back();
    if (line.starts_with("intervals [")) {
      tier.items.emplace_back();
      in_interval = true;
      continue;
    }
    if (line.starts_with("points [")) {
      in_interval = false;
      continue;
    }
    auto eq = line.find('=');
    if (eq == std::string_view::npos) continue;
    std::string_view key = trim(line.substr(0, eq));
    std::string_view value = line.substr(eq + 1);
    if (key == "class") {
      tier.interval = unquote(value) == "IntervalTier";
    } else if (key == "name") {
      tier.name = unquote(value);
    } else if (in_interval && key == "xmin") {
      tier.items.back().start = parse_double(value, "TextGrid xmin");
    } else if (in_interval && key == "xmax") {
      tier.items.back().end = parse_double(value, "TextGrid xmax");
    } else if (in_interval && key == "text") {
      tier.items.back().label = unquote(value);
    }
  }

  auto find = [&](std::string_view name) -> std::vector<Interval> & {
    for (auto &t : tiers)
      if (t.interval && lower(t.name) == name) return t.items;
    throw Error("missing tier '" + std::string(name) + "'");
  };
  auto &words = find("words");
  auto &phones = find("phones");
  return build_alignment(std::move(utterance_id), std::move(words), std::move(phones));
}

namespace {

std::vector<Interval> parse_tsv_tier(std::string_view text, std::string_view what) {
  std::vector<Interval> tier;
  std::size_t lineno = 0;
  for (std::string_view line : split_lines(text)) {
    ++lineno;
    if (trim(line).empty()) continue;
    auto t1 = line.find('\t');
    auto t2 = t1 == std::string_view::npos ? t1 : line.find('\t', t1 + 1);
    if (t2 == std::string_view::npos)
      throw Error(std::string(what) + " line " + std::to_string(lineno) +
                  ": expected start<TAB>end<TAB>label");
    Interval iv;
    iv.start = parse_double(line.substr(0, t1), what);
    iv.end = parse_double(line.substr(t1 + 1, t2 - t1 - 1), what);
    iv.label = std::string(line.substr(t2 + 1));
    tier.push_back(std::move(iv));
  }
  return tier;
}

} // namespace

Alignment parse_tsv(std::string_view words_text, std::string_view phones_text,
                    std::string utterance_id) {
  return build_alignment(std::move(utterance_id), parse_tsv_tier(words_text, "words tsv"),
                         parse_tsv_tier(phones_text, "phones tsv"));
}

std::filesystem::path phones_path_for(const std::filesystem::path &words_tsv) {
  std::string name = words_tsv.filename().string();
  const std::string suffix = ".words.tsv";
  if (name.size() > suffix.size() && name.ends_with(suffix))
    return words_tsv.parent_path() / (name.substr(0, name.size() - suffix.size()) + ".phones.tsv");
  return words_tsv.parent_path() / (words_tsv.stem().string() + ".phones.tsv");
}

Alignment parse_alignment(const std::filesystem::path &path, AlignmentFormat format) {
  std::string id = path.filename().string();
  id = id.substr(0, id.find('.'));
  try {
    if (format == AlignmentFormat::textgrid) return parse_textgrid(read_file(path), id);
    return parse_tsv(read_file(path), read_file(phones_path_for(path)), id);
  } catch (const Error &e) {
    throw Error(path.string() + ": " + e.what());
  }
}

std::string format_tsv(std::span<const Interval> tier) {
  std::string out;
  char buf[64];
  for (const auto &iv : tier) {
    std::snprintf(buf, sizeof buf, "%.4f\t%.4f\t", iv.start, iv.end);
    out += buf;
    out += iv.label;
    out += '\n';
  }
  return out;
}

} // namespace prosody
