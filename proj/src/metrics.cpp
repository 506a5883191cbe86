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

#include "prosody/augment.hpp"
#include "prosody/eval.hpp"

namespace prosody {

SeriesMetrics series_metrics(std::span<const std::pair<double, double>> pairs,
                             const std::vector<bool> &mask) {
  if (mask.size() != pairs.size()) throw Error("mask length does not match pairs");
  std::vector<std::pair<double, double>> kept;
  for (std::size_t i = 0; i < pairs.size(); ++i)
    if (mask[i]) kept.push_back(pairs[i]);
  if (kept.empty()) throw Error("no pairs pass the mask");

  SeriesMetrics m;
  m.count = kept.size();
  const double n = static_cast<double>(kept.size());
  double sq = 0.0, mx = 0.0, my = 0.0;
  for (const auto &[x, y] : kept) {
    sq += (x - y) * (x - y);
    mx += x;
    my += y;
  }
  m.rmse = std::sqrt(sq / n);
  if (kept.size() < 3) return m;
  mx /= n;
  my /= n;
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (const auto &[x, y] : kept) {
    sxy += (x - mx) * (y - my);
    sxx += (x - mx) * (x - mx);
    syy += (y - my) * (y - my);
  }
  // Relative guard: a constant series leaves rounding residue in sxx.
  const double scale_x = std::max(1.0, mx * mx) * n, scale_y = std::max(1.0, my * my) * n;
  if (sxx <= 1e-24 * scale_x || syy <= 1e-24 * scale_y) return m;
  m.correlation = std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
  return m;
}

SeriesMetrics series_metrics(std::span<const std::pair<double, double>> pairs) {
  return series_metrics(pairs, std::vector<bool>(pairs.size(), true));
}

namespace {

std::vector<const Interval *> spoken(const std::vector<Interval> &tier) {
  std::vector<const Interval *> out;
  for (const auto &iv : tier)
    if (!iv.is_silence() && !is_silence_label(iv.label)) out.push_back(&iv);
  return out;
}

std::vector<Interval> word_tier(const Alignment &a) {
  std::vector<Interval> out;
  for (const auto &w : a.words) out.push_back(static_cast<const Interval &>(w));
  return out;
}

SeriesMetrics level_metrics(const std::vector<Interval> &ref, const std::vector<Interval> &syn,
                            const char *level) {
  const auto pairs = match_durations(ref, syn);
  if (pairs.size() < 3)
    throw Error(std::string("fewer than 3 matched ") + level + "s (" +
                std::to_string(pairs.size()) + ")");
  return series_metrics(pairs);
}

} // namespace

std::vector<std::pair<double, double>> match_durations(const std::vector<Interval> &ref_tier,
                                                       const std::vector<Interval> &syn_tier) {
  const auto ref = spoken(ref_tier), syn = spoken(syn_tier);
  const std::size_t n = ref.size(), m = syn.size();
  auto same = [&](std::size_t i, std::size_t j) {
    return fold_word(ref[i]->label) == fold_word(syn[j]->label);
  };

  std::vector<std::pair<double, double>> out;
  bool identical = n == m;
  for (std::size_t i = 0; identical && i < n; ++i) identical = same(i, i);
  if (identical) {
    for (std::size_t i = 0; i < n; ++i) out.emplace_back(ref[i]->length(), syn[i]->length());
    return out;
  }

  // Levenshtein table, then a backtrace collecting exact matches.
  std::vector<std::vector<std::size_t>> d(n + 1, std::vector<std::size_t>(m + 1));
  for (std::size_t i = 0; i <= n; ++i) d[i][0] = i;
  for (std::size_t j = 0; j <= m; ++j) d[0][j] = j;
  for (std::size_t i = 1; i <= n; ++i)
    for (std::size_t j = 1; j <= m; ++j)
      d[i][j] = std::min({d[i - 1][j - 1] + (same(i - 1, j - 1) ? 0u : 1u), d[i - 1][j] + 1,
                          d[i][j - 1] + 1});

  std::size_t i = n, j = m;
  while (i > 0 && j > 0) {
    const bool match = same(i - 1, j - 1);
    if (d[i][j] == d[i - 1][j - 1] + (match ? 0u : 1u)) {
      if (match) out.emplace_back(ref[i - 1]->length(), syn[j - 1]->length());
      --i;
      --j;
    } else if (d[i][j] == d[i - 1][j] + 1) {
      --i;
    } else {
      --j;
    }
  }
  std::reverse(out.begin(), out.end());
  return out;
}

DurationMetrics duration_metrics(const Alignment &ref, const Alignment &syn) {
  DurationMetrics out;
  out.phone = level_metrics(ref.phones, syn.phones, "phone");
  out.word = level_metrics(word_tier(ref), word_tier(syn), "word");
  return out;
}

LabelBlock label_block(std::span<const int> oracle, std::span<const int> predicted) {
  if (oracle.size() != predicted.size()) throw Error("label count mismatch");
  LabelBlock blk;
  for (std::size_t i = 0; i < oracle.size(); ++i) {
    if (oracle[i] < 0 || oracle[i] > 2 || predicted[i] < 0 || predicted[i] > 2)
      throw Error("label class outside 0..2");
    ++blk.confusion[oracle[i]][predicted[i]];
  }
  blk.total = oracle.size();
  std::size_t trace = 0;
  for (int c = 0; c < 3; ++c) {
    trace += blk.confusion[c][c];
    std::size_t row = 0, col = 0;
    for (int k = 0; k < 3; ++k) {
      row += blk.confusion[c][k];
      col += blk.confusion[k][c];
    }
    auto &cs = blk.classes[c];
    const double tp = static_cast<double>(blk.confusion[c][c]);
    if (col > 0) cs.precision = tp / static_cast<double>(col); else cs.undefined = true;
    if (row > 0) cs.recall = tp / static_cast<double>(row); else cs.undefined = true;
    if (cs.precision + cs.recall > 0.0)
      cs.f = 2.0 * cs.precision * cs.recall / (cs.precision + cs.recall);
    else
      cs.undefined = true;
  }
  blk.accuracy = blk.total > 0 ? static_cast<double>(trace) / static_cast<double>(blk.total) : 0.0;
  return blk;
}

LabelReport label_report(const std::vector<UtteranceLabels> &utterances) {
  if (utterances.empty()) throw Error("empty label comparison");
  std::vector<int> op, pp, ob, pb;
  for (const auto &u : utterances) {
    if (u.oracle.size() != u.predicted.size())
      throw Error("word-count mismatch in utterance '" + u.id + "' (" +
                  std::to_string(u.oracle.size()) + " vs " + std::to_string(u.predicted.size()) +
                  ")");
    for (std::size_t i = 0; i < u.oracle.size(); ++i) {
      op.push_back(u.oracle[i].p_class);
      pp.push_back(u.predicted[i].p_class);
      ob.push_back(u.oracle[i].b_class);
      pb.push_back(u.predicted[i].b_class);
    }
  }
  if (op.empty()) throw Error("empty label comparison");
  return {label_block(op, pp), label_block(ob, pb)};
}

nlohmann::json to_json(const SeriesMetrics &m) {
  nlohmann::json j = {{"rmse", m.rmse}, {"n", m.count}};
  j["correlation"] = m.correlation ? nlohmann::json(*m.correlation) : nlohmann::json(nullptr);
  return j;
}

namespace {

nlohmann::json block_json(const LabelBlock &b) {
  nlohmann::json classes = nlohmann::json::array();
  for (int c = 0; c < 3; ++c) {
    const auto &cs = b.classes[c];
    classes.push_back({{"class", c},
                       {"precision", cs.precision},
                       {"recall", cs.recall},
                       {"f", cs.f},
                       {"undefined", cs.undefined}});
  }
  return {{"accuracy", b.accuracy}, {"total", b.total}, {"confusion", b.confusion},
          {"classes", classes}};
}

} // namespace

nlohmann::json to_json(const LabelReport &r) {
  return {{"prominence", block_json(r.prominence)}, {"boundary", block_json(r.boundary)}};
}

EvalTracks eval_tracks(const AudioBuffer &audio, const SignalConfig &cfg, std::size_t n_frames,
                       Exec exec) {
  SignalConfig c = cfg;
  c.frame_period = kMelHop;
  const PitchTrack pitch = extract_f0(audio, c, exec);
  const ProsodicSignal energy = extract_energy(audio, c);
  EvalTracks t;
  t.f0_st.assign(n_frames, 0.0);
  t.voiced.assign(n_frames, false);
  t.energy_db.assign(n_frames, energy.values.back());
  for (std::size_t i = 0; i < n_frames; ++i) {
    if (i < pitch.size() && pitch.voiced[i]) {
      t.voiced[i] = true;
      t.f0_st[i] = 12.0 * std::log2(pitch.f0_hz[i] / 100.0);
    }
    if (i < energy.size()) t.energy_db[i] = energy.values[i];
  }
  return t;
}

} // namespace prosody
