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
#include <fstream>

#include "prosody/labeler.hpp"

namespace prosody {

namespace {

constexpr double kDurationTolerance = 0.05;

bool inside(double t, double start, double end) { return t >= start && t < end; }

} // namespace

std::vector<WordScores> assign_word_scores(const std::vector<Line> &ridges,
                                           const std::vector<Line> &valleys,
                                           const Alignment &alignment, double frame_period) {
  const auto spoken = alignment.spoken_words();
  if (spoken.empty()) throw Error("empty alignment");
  const auto pauses = alignment.pauses();
  std::vector<WordScores> out(spoken.size());

  for (const auto &line : ridges) {
    const double t = static_cast<double>(line.anchor_frame) * frame_period;
    for (std::size_t w = 0; w < spoken.size(); ++w) {
      if (inside(t, spoken[w]->start, spoken[w]->end)) {
        out[w].prominence = std::max(out[w].prominence, line.strength);
        break;
      }
    }
  }

  for (const auto &line : valleys) {
    const double t = static_cast<double>(line.anchor_frame) * frame_period;
    std::ptrdiff_t target = -1;
    const auto pause = std::find_if(pauses.begin(), pauses.end(),
                                    [&](const Interval &p) { return inside(t, p.start, p.end); });
    if (pause != pauses.end()) {
      // Preceding spoken word; pauses before the first word have none.
      for (std::size_t w = 0; w < spoken.size(); ++w)
        if (spoken[w]->end <= pause->start + 1e-9) target = static_cast<std::ptrdiff_t>(w);
    } else {
      double best = 0.0;
      for (std::size_t w = 0; w < spoken.size(); ++w) {
        const double d = std::abs(spoken[w]->end - t);
        if (target < 0 || d < best) {
          best = d;
          target = static_cast<std::ptrdiff_t>(w);
        }
      }
    }
    if (target >= 0) out[target].boundary = std::max(out[target].boundary, line.strength);
  }
  return out;
}

int discretize(double value, Range thresholds) {
  if (!(value >= 0.0)) throw Error("cannot discretize negative value " + std::to_string(value));
  if (!(thresholds.first < thresholds.second)) throw Error("thresholds must satisfy t1 < t2");
  if (value < thresholds.first) return 0;
  if (value < thresholds.second) return 1;
  return 2;
}

void standardize_rows(Scalogram &s) {
  for (std::size_t r = 0; r < s.n_scales(); ++r) {
    auto row = s.coefficients.row(r);
    double acc = 0.0;
    for (double v : row) acc += v * v;
    const double rms = std::sqrt(acc / static_cast<double>(row.size()));
    if (rms <= 1e-12) continue;
    for (auto &v : row) v /= rms;
  }
}

AnnotationTrace annotate_trace(const AudioBuffer &audio, const Alignment &alignment,
                               const Config &cfg, Exec exec) {
  cfg.validate();
  if (alignment.spoken_words().empty()) throw Error("empty alignment");
  if (audio.duration() < alignment.end_time() - kDurationTolerance)
    throw Error("duration mismatch: audio " + std::to_string(audio.duration()) +
                " s, alignment ends at " + std::to_string(alignment.end_time()) + " s");

  AnnotationTrace tr;
  const PitchTrack pitch = extract_f0(audio, cfg.signals, exec);
  tr.f0 = f0_semitones(pitch);
  tr.energy = extract_energy(audio, cfg.signals);
  const double ceiling = *std::max_element(tr.energy.values.begin(), tr.energy.values.end());
  for (auto &v : tr.energy.values) v = std::max(v, ceiling - cfg.energy_range_db);
  tr.duration = duration_signal(alignment, tr.f0.size(), cfg.signals.frame_period);

  const ProsodicSignal f0n = znorm(tr.f0), enn = znorm(tr.energy), dun = znorm(tr.duration);
  tr.prominence_signal = combine_prominence(f0n, enn, dun, cfg.weights);
  tr.boundary_signal = combine_boundary(f0n, enn, dun);

  const ScaleBank bank = ScaleBank::geometric(cfg.wavelet.period_min, cfg.wavelet.period_max,
                                              cfg.wavelet.scales_per_octave);
  tr.word_band = band_for(bank, cfg.wavelet.word_band.first, cfg.wavelet.word_band.second);
  tr.phrase_band = band_for(bank, cfg.wavelet.phrase_band.first, cfg.wavelet.phrase_band.second);

  tr.prominence_scalogram = cwt(tr.prominence_signal, bank, exec);
  tr.boundary_scalogram = cwt(tr.boundary_signal, bank, exec);
  standardize_rows(tr.prominence_scalogram);
  standardize_rows(tr.boundary_scalogram);

  tr.ridges = track_lines(tr.prominence_scalogram, Polarity::ridge, tr.word_band,
                          cfg.wavelet.link_window_factor);
  tr.valleys = track_lines(tr.boundary_scalogram, Polarity::valley, tr.phrase_band,
                           cfg.wavelet.link_window_factor);

  const auto scores = assign_word_scores(tr.ridges, tr.valleys, alignment, cfg.signals.frame_period);
  const auto spoken = alignment.spoken_words();
  tr.words.reserve(spoken.size());
  for (std::size_t i = 0; i < spoken.size(); ++i) {
    WordAnnotation w;
    w.word = spoken[i]->label;
    w.start = spoken[i]->start;
    w.end = spoken[i]->end;
    // Rounded to the persisted precision so classes re-derive from the JSONL.
    w.prominence = round4(scores[i].prominence);
    w.boundary = round4(scores[i].boundary);
    tr.words.push_back(std::move(w));
  }
  apply_thresholds(tr.words, cfg.thresholds);
  return tr;
}

std::vector<WordAnnotation> annotate_utterance(const AudioBuffer &audio,
                                               const Alignment &alignment, const Config &cfg,
                                               Exec exec) {
  return annotate_trace(audio, alignment, cfg, exec).words;
}

void apply_thresholds(std::vector<WordAnnotation> &words, const Thresholds &thr) {
  for (auto &w : words) {
    w.p_class = discretize(w.prominence, thr.prominence);
    w.b_class = discretize(w.boundary, thr.boundary);
  }
}

double round4(double v) { return std::round(v * 1e4) / 1e4; }

nlohmann::json word_json(const WordAnnotation &w) {
  return {{"w", w.word},
          {"start", round4(w.start)},
          {"end", round4(w.end)},
          {"prominence", round4(w.prominence)},
          {"boundary", round4(w.boundary)},
          {"p", w.p_class},
          {"b", w.b_class}};
}

WordAnnotation word_from_json(const nlohmann::json &j) {
  try {
    WordAnnotation w;
    w.word = j.at("w").get<std::string>();
    w.start = j.at("start").get<double>();
    w.end = j.at("end").get<double>();
    w.prominence = j.at("prominence").get<double>();
    w.boundary = j.at("boundary").get<double>();
    w.p_class = j.at("p").get<int>();
    w.b_class = j.at("b").get<int>();
    return w;
  } catch (const nlohmann::json::exception &e) {
    throw Error(std::string("malformed word annotation: ") + e.what());
  }
}

nlohmann::json annotation_record(const std::string &id, const std::vector<WordAnnotation> &words,
                                 const std::string &config_hash) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto &w : words) arr.push_back(word_json(w));
  return {{"id", id}, {"words", std::move(arr)}, {"config_hash", config_hash}};
}

AnnotationRecord parse_annotation_record(const nlohmann::json &j) {
  AnnotationRecord r;
  try {
    r.id = j.at("id").get<std::string>();
    r.config_hash = j.value("config_hash", "");
    for (const auto &w : j.at("words")) r.words.push_back(word_from_json(w));
  } catch (const nlohmann::json::exception &e) {
    throw Error(std::string("malformed annotation record: ") + e.what());
  }
  return r;
}

std::vector<AnnotationRecord> load_annotations(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  std::vector<AnnotationRecord> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      out.push_back(parse_annotation_record(nlohmann::json::parse(line)));
    } catch (const std::exception &e) {
      throw Error(path + ":" + std::to_string(lineno) + ": " + e.what());
    }
  }
  return out;
}

} // namespace prosody
