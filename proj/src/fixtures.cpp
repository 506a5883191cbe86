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
#include <cmath>
#include <cstdio>
#include <numbers>
#include <random>

#include "prosody/fixtures.hpp"

namespace prosody::fixtures {

namespace {

struct VocabEntry {
  const char *word;
  const char *phones;
};

constexpr VocabEntry kVocab[] = {
    {"MARY", "M EH1 R IY0"},    {"WERE", "W ER1"},           {"WE", "W IY1"},
    {"LIKE", "L AY1 K"},        {"THE", "DH AH0"},           {"CAT", "K AE1 T"},
    {"DOG", "D AO1 G"},         {"SAW", "S AO1"},            {"RED", "R EH1 D"},
    {"BIG", "B IH1 G"},         {"HOUSE", "HH AW1 S"},       {"NEAR", "N IH1 R"},
    {"OLD", "OW1 L D"},         {"MAN", "M AE1 N"},          {"GAVE", "G EY1 V"},
    {"BOOK", "B UH1 K"},        {"HER", "HH ER1"},           {"LEMON", "L EH1 M AH0 N"},
    {"GARDEN", "G AA1 R D AH0 N"}, {"YELLOW", "Y EH1 L OW0"}, {"WINDOW", "W IH1 N D OW0"},
    {"MORNING", "M AO1 R N IH0 NG"}, {"ANNA", "AE1 N AH0"},  {"BLUE", "B L UW1"},
};

constexpr double kLeadSilence = 0.15;
constexpr double kTrailSilence = 0.20;
constexpr double kRamp = 0.025;
constexpr double kFinalLengthening = 1.3; // pre-pause word
constexpr double kBaseAmplitude = 0.2;
constexpr int kHarmonics = 10;

// Portable uniform draws; std distributions differ across standard libraries.
class Rng {
public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}
  double uniform(double lo, double hi) {
    const double u = static_cast<double>(gen_() >> 11) * 0x1.0p-53;
    return lo + (hi - lo) * u;
  }
  std::size_t index(std::size_t n) { return static_cast<std::size_t>(gen_() % n); }

private:
  std::mt19937_64 gen_;
};

double round4(double t) { return std::round(t * 1e4) / 1e4; }

std::vector<std::string> split_phones(const char *s) {
  std::vector<std::string> out;
  std::string cur;
  for (const char *p = s;; ++p) {
    if (*p == ' ' || *p == '\0') {
      if (!cur.empty()) out.push_back(cur);
      cur.clear();
      if (*p == '\0') break;
    } else {
      cur.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(*p))));
    }
  }
  return out;
}

struct Segment {
  double start, end;
  double accent_st; // f0 hump height in semitones
  double gain_db;
  bool voiced;
};

Utterance make_utterance(std::size_t index, Rng &rng, int sample_rate) {
  Utterance u;
  char id[32];
  std::snprintf(id, sizeof id, "fx%03zu", index + 1);
  u.id = id;

  const std::size_t n_words = 6 + rng.index(3);
  u.design.resize(n_words);
  std::vector<std::size_t> vocab_idx(n_words);
  for (auto &v : vocab_idx) v = rng.index(std::size(kVocab));

  // One emphasized word away from the edges, two deaccented words.
  const std::size_t emph = 1 + rng.index(n_words - 2);
  u.design[emph].role = Role::emphasized;
  for (int placed = 0; placed < 2;) {
    const std::size_t k = rng.index(n_words);
    if (u.design[k].role != Role::normal) continue;
    u.design[k].role = Role::deaccented;
    ++placed;
  }
  // One or two internal pauses, never adjacent to each other.
  const int pauses = 1 + static_cast<int>(rng.index(2));
  for (int placed = 0, guard = 0; placed < pauses && guard < 100; ++guard) {
    const std::size_t k = 1 + rng.index(n_words - 2);
    if (u.design[k].pause_after || u.design[k - 1].pause_after ||
        (k + 1 < n_words && u.design[k + 1].pause_after))
      continue;
    u.design[k].pause_after = true;
    ++placed;
  }

  std::vector<Segment> voiced;
  double t = round4(kLeadSilence);
  u.words.push_back({"sil", 0.0, t});
  u.phones.push_back({"sil", 0.0, t});
  for (std::size_t w = 0; w < n_words; ++w) {
    auto &d = u.design[w];
    const auto &entry = kVocab[vocab_idx[w]];
    d.word = entry.word;
    std::string lower = d.word;
    std::transform(lower.begin(), lower.end(), lower.begin(), ::tolower);

    const auto phones = split_phones(entry.phones);
    double dur = 0.16 + 0.05 * static_cast<double>(phones.size()) + rng.uniform(-0.02, 0.02);
    double accent = 2.0, gain = 0.0;
    if (d.role == Role::emphasized) {
      dur *= 1.8;
      accent = 6.0;
      gain = 6.0;
    } else if (d.role == Role::deaccented) {
      dur *= 0.8;
      accent = 0.0;
      gain = -4.0;
    }
    if (d.pause_after) dur *= kFinalLengthening;
    const double start = t, end = round4(t + dur);
    u.words.push_back({lower, start, end});
    for (std::size_t p = 0; p < phones.size(); ++p) {
      const double ps = p == 0 ? start : round4(start + (end - start) * p / phones.size());
      const double pe = p + 1 == phones.size() ? end
                                               : round4(start + (end - start) * (p + 1) / phones.size());
      u.phones.push_back({phones[p], ps, pe});
    }
    voiced.push_back({start, end, accent, gain, true});
    t = end;
    if (d.pause_after) {
      const double pend = round4(t + rng.uniform(0.3, 0.45));
      u.words.push_back({"sil", t, pend});
      u.phones.push_back({"sil", t, pend});
      t = pend;
    }
  }
  const double total = round4(t + kTrailSilence);
  u.words.push_back({"sil", t, total});
  u.phones.push_back({"sil", t, total});

  for (std::size_t w = 0; w < n_words; ++w) {
    if (w) u.text += ' ';
    std::string lower = u.design[w].word;
    std::transform(lower.begin() + 1, lower.end(), lower.begin() + 1, ::tolower);
    u.text += lower;
    if (u.design[w].pause_after) u.text += ',';
  }
  u.text += '.';

  // Harmonic source: declining baseline plus a raised-sine accent per word.
  const auto n = static_cast<std::size_t>(std::llround(total * sample_rate));
  u.audio.sample_rate = sample_rate;
  u.audio.samples.assign(n, 0.0);
  std::vector<double> phase(kHarmonics, 0.0);
  std::size_t seg = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double time = static_cast<double>(i) / sample_rate;
    while (seg < voiced.size() && time >= voiced[seg].end) ++seg;
    const double base_st = 12.0 * std::log2(130.0 / 100.0) - 4.0 * time / total;
    if (seg < voiced.size() && time >= voiced[seg].start) {
      const auto &s = voiced[seg];
      const double x = (time - s.start) / (s.end - s.start);
      const double st = base_st + s.accent_st * std::sin(std::numbers::pi * x);
      const double f0 = 100.0 * std::exp2(st / 12.0);
      const double ramp = std::min({1.0, (time - s.start) / kRamp, (s.end - time) / kRamp});
      const double env = kBaseAmplitude * std::pow(10.0, s.gain_db / 20.0) *
                         std::sin(0.5 * std::numbers::pi * std::max(0.0, ramp));
      double acc = 0.0;
      for (int h = 0; h < kHarmonics; ++h) {
        phase[h] += 2.0 * std::numbers::pi * f0 * (h + 1) / sample_rate;
        if (f0 * (h + 1) < 0.45 * sample_rate) acc += std::sin(phase[h]) / (h + 1);
      }
      u.audio.samples[i] = env * acc / 1.8;
    }
    u.audio.samples[i] += rng.uniform(-1e-4, 1e-4);
  }
  return u;
}

} // namespace

const char *role_name(Role r) {
  switch (r) {
  case Role::emphasized:
    return "emphasized";
  case Role::deaccented:
    return "deaccented";
  default:
    return "normal";
  }
}

std::vector<Utterance> generate(const Options &opts) {
  Rng rng(opts.seed);
  std::vector<Utterance> out;
  for (std::size_t i = 0; i < opts.count; ++i)
    out.push_back(make_utterance(i, rng, opts.sample_rate));
  return out;
}

std::string lexicon_text() {
  std::string out = ";;; fixture lexicon\n";
  for (const auto &e : kVocab) {
    out += e.word;
    out += "  ";
    out += e.phones;
    out += '\n';
  }
  return out;
}

nlohmann::json design_json(const std::vector<Utterance> &utterances) {
  nlohmann::json j = nlohmann::json::array();
  for (const auto &u : utterances) {
    nlohmann::json words = nlohmann::json::array();
    for (const auto &d : u.design)
      words.push_back({{"w", d.word}, {"role", role_name(d.role)}, {"pause_after", d.pause_after}});
    j.push_back({{"id", u.id}, {"words", words}});
  }
  return j;
}

void write_corpus(const std::filesystem::path &dir, const std::vector<Utterance> &utterances) {
  std::string metadata;
  for (const auto &u : utterances) {
    write_audio(dir / "wavs" / (u.id + ".wav"), u.audio);
    write_file(dir / "align" / (u.id + ".words.tsv"), format_tsv(u.words));
    write_file(dir / "align" / (u.id + ".phones.tsv"), format_tsv(u.phones));
    metadata += u.id + "|" + u.text + "\n";
  }
  write_file(dir / "metadata.csv", metadata);
  write_file(dir / "lexicon.dict", lexicon_text());
  write_file(dir / "design.json", design_json(utterances).dump(2) + "\n");
}

} // namespace prosody::fixtures
