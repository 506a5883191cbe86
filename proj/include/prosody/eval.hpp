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

#pragma once

#include <array>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "prosody/common.hpp"
#include "prosody/ingest.hpp"
#include "prosody/labeler.hpp"
#include "prosody/matrix.hpp"
#include "prosody/signals.hpp"

namespace prosody {

inline constexpr std::size_t kMelBands = 40;
inline constexpr double kMelHop = 0.010;
inline constexpr double kMelWindow = 0.025;
inline constexpr double kMelMaxHz = 8000.0;
inline constexpr double kLogFloor = 1e-10;

/// Frames x 40 log-mel energies (natural log, floored at 1e-10).
struct FeatureMatrix {
  Matrix values;
  double hop = kMelHop;
  double window = kMelWindow;

  std::size_t frames() const { return values.rows(); }
  std::size_t bands() const { return values.cols(); }
};

/// Triangular filters on the HTK mel scale, rows = bands, cols = fft bins.
Matrix mel_filterbank(std::size_t n_bands, std::size_t nfft, int sample_rate, double max_hz);

FeatureMatrix mel_features(const AudioBuffer &audio, Exec exec = Exec::parallel);

using WarpPath = std::vector<std::pair<std::size_t, std::size_t>>;

struct DtwResult {
  WarpPath path;
  double cost = 0.0;
};

/// Minimum-cost monotone alignment with Euclidean frame distance and steps
/// (1,0), (0,1), (1,1). On ties the backtrace prefers (1,1), then (1,0).
DtwResult dtw_align(const Matrix &a, const Matrix &b, Exec exec = Exec::parallel);
inline DtwResult dtw_align(const FeatureMatrix &a, const FeatureMatrix &b,
                           Exec exec = Exec::parallel) {
  return dtw_align(a.values, b.values, exec);
}

/// For each reference frame i, the first synthetic frame j with (i, j) on
/// the path.
std::vector<std::size_t> warp_indices(const WarpPath &path, std::size_t n_ref, std::size_t n_syn);

std::vector<std::pair<double, double>> warp_series(const WarpPath &path,
                                                   std::span<const double> ref,
                                                   std::span<const double> syn);

struct SeriesMetrics {
  double rmse = 0.0;
  std::optional<double> correlation; // missing when undefined
  std::size_t count = 0;
};

/// RMSE and Pearson correlation over the pairs where mask is true. RMSE
/// needs one pair; correlation needs three and non-zero variance on both
/// sides, else it is reported missing.
SeriesMetrics series_metrics(std::span<const std::pair<double, double>> pairs,
                             const std::vector<bool> &mask);
SeriesMetrics series_metrics(std::span<const std::pair<double, double>> pairs);

struct DurationMetrics {
  SeriesMetrics phone;
  SeriesMetrics word;
};

/// Pairs of matched unit durations (ref, syn) after dropping silences; label
/// sequences that differ are aligned by minimum edit distance and only
/// exact matches are kept.
std::vector<std::pair<double, double>> match_durations(const std::vector<Interval> &ref,
                                                       const std::vector<Interval> &syn);

DurationMetrics duration_metrics(const Alignment &ref, const Alignment &syn);

struct PairwiseTest {
  std::size_t a = 0;
  std::size_t b = 0;
  double t = 0.0;
  double p_raw = 1.0;
  double p_adj = 1.0;
};

struct SignificanceResult {
  double f = 0.0;
  double p = 1.0;
  double df_between = 0.0;
  double df_within = 0.0;
  std::vector<PairwiseTest> pairwise;
};

double bonferroni(double p, std::size_t comparisons);

/// Upper tail of the F distribution via the regularized incomplete beta.
double f_test_p_value(double f, double df1, double df2);

/// One-way ANOVA plus all pairwise pooled-variance t-tests, Bonferroni
/// adjusted over the k(k-1)/2 pairs.
SignificanceResult significance_tests(const std::vector<std::vector<double>> &groups);

struct ClassStats {
  double precision = 0.0;
  double recall = 0.0;
  double f = 0.0;
  bool undefined = false; // some ratio was 0/0 and reported as 0
};

struct LabelBlock {
  std::array<std::array<std::size_t, 3>, 3> confusion{}; // [oracle][predicted]
  std::array<ClassStats, 3> classes{};
  double accuracy = 0.0;
  std::size_t total = 0;
};

struct LabelReport {
  LabelBlock prominence;
  LabelBlock boundary;
};

struct UtteranceLabels {
  std::string id;
  std::vector<WordAnnotation> oracle;
  std::vector<WordAnnotation> predicted;
};

LabelBlock label_block(std::span<const int> oracle, std::span<const int> predicted);
LabelReport label_report(const std::vector<UtteranceLabels> &utterances);

nlohmann::json to_json(const SeriesMetrics &m);
nlohmann::json to_json(const LabelReport &r);
nlohmann::json to_json(const SignificanceResult &s, const std::vector<std::string> &names);

/// Evaluation-side f0 (semitones, voiced frames) and energy (dB) on the
/// 10 ms DTW grid, truncated to `n_frames`.
struct EvalTracks {
  std::vector<double> f0_st;
  std::vector<bool> voiced;
  std::vector<double> energy_db;
};

EvalTracks eval_tracks(const AudioBuffer &audio, const SignalConfig &cfg, std::size_t n_frames,
                       Exec exec = Exec::parallel);

} // namespace prosody
