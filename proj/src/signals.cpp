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
#include <numeric>

#include "prosody/kernels.hpp"
#include "prosody/signals.hpp"

namespace prosody {

namespace {

std::size_t to_samples(double seconds, int sample_rate) {
  return static_cast<std::size_t>(std::lround(seconds * sample_rate));
}

// Start of the analysis window centred on frame i, shifted to stay inside
// the signal.
std::size_t window_start(std::size_t frame, std::size_t hop, std::size_t window, std::size_t n) {
  const auto centre = static_cast<std::ptrdiff_t>(frame * hop);
  const auto start = centre - static_cast<std::ptrdiff_t>(window / 2);
  return static_cast<std::size_t>(
      std::clamp<std::ptrdiff_t>(start, 0, static_cast<std::ptrdiff_t>(n - window)));
}

void require_same_grid(const ProsodicSignal &a, const ProsodicSignal &b,
                       const ProsodicSignal &c) {
  if (a.size() != b.size() || a.size() != c.size())
    throw Error("signal length mismatch (" + std::to_string(a.size()) + ", " +
                std::to_string(b.size()) + ", " + std::to_string(c.size()) + ")");
  if (a.frame_period != b.frame_period || a.frame_period != c.frame_period)
    throw Error("signal frame period mismatch");
}

struct PitchEstimate {
  double f0 = 0.0;
  bool voiced = false;
};

PitchEstimate estimate_frame(std::span<const double> frame, int sample_rate,
                             const SignalConfig &cfg) {
  const std::size_t w = frame.size();
  std::vector<double> x(frame.begin(), frame.end());
  const double mean = std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(w);
  double energy = 0.0;
  for (auto &v : x) {
    v -= mean;
    energy += v * v;
  }
  if (energy < 1e-12 * static_cast<double>(w)) return {};

  const auto lag_min = std::max<std::size_t>(
      2, static_cast<std::size_t>(std::floor(sample_rate / cfg.f0_max)));
  const auto lag_max = std::min<std::size_t>(
      w / 2, static_cast<std::size_t>(std::ceil(sample_rate / cfg.f0_min)));
  if (lag_max <= lag_min + 1) return {};

  // Normalized autocorrelation over lags lag_min-1 .. lag_max+1.
  std::vector<double> r(lag_max + 2, 0.0);
  for (std::size_t lag = lag_min - 1; lag <= lag_max + 1; ++lag) {
    double num = 0.0, e0 = 0.0, e1 = 0.0;
    for (std::size_t n = 0; n + lag < w; ++n) {
      num += x[n] * x[n + lag];
      e0 += x[n] * x[n];
      e1 += x[n + lag] * x[n + lag];
    }
    const double den = std::sqrt(e0 * e1);
    r[lag] = den > 0.0 ? num / den : 0.0;
  }

  std::size_t best = lag_min;
  for (std::size_t lag = lag_min; lag <= lag_max; ++lag)
    if (r[lag] > r[best]) best = lag;
  // Prefer the shortest-lag local peak close to the global one; multiples of
  // the true period score almost as high and would give octave-down errors.
  for (std::size_t lag = lag_min; lag <= lag_max; ++lag) {
    if (r[lag] >= r[lag - 1] && r[lag] >= r[lag + 1] && r[lag] >= 0.9 * r[best]) {
      best = lag;
      break;
    }
  }
  if (r[best] < cfg.voicing_threshold) return {};

  double lag = static_cast<double>(best);
  const double a = r[best - 1], b = r[best], c = r[best + 1];
  const double denom = a - 2.0 * b + c;
  if (denom < 0.0) lag += 0.5 * (a - c) / denom;
  const double f0 = sample_rate / lag;
  if (f0 < cfg.f0_min || f0 > cfg.f0_max) return {};
  return {f0, true};
}

double median_of(std::vector<double> v) {
  const std::size_t mid = v.size() / 2;
  std::nth_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(mid), v.end());
  if (v.size() % 2 == 1) return v[mid];
  const double upper = v[mid];
  const double lower = *std::max_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(mid));
  return 0.5 * (lower + upper);
}

// Linear interpolation through (frame, value) anchors with constant
// extension beyond the first and last anchor.
std::vector<double> interpolate_anchors(const std::vector<std::pair<std::size_t, double>> &anchors,
                                        std::size_t n) {
  std::vector<double> out(n, 0.0);
  if (anchors.empty()) return out;
  for (std::size_t i = 0; i <= anchors.front().first && i < n; ++i) out[i] = anchors.front().second;
  for (std::size_t a = 0; a + 1 < anchors.size(); ++a) {
    const auto [f0, v0] = anchors[a];
    const auto [f1, v1] = anchors[a + 1];
    for (std::size_t i = f0; i <= f1; ++i) {
      const double t = static_cast<double>(i - f0) / static_cast<double>(f1 - f0);
      out[i] = v0 + (v1 - v0) * t;
    }
    out[f1] = v1;
  }
  for (std::size_t i = anchors.back().first; i < n; ++i) out[i] = anchors.back().second;
  return out;
}

std::vector<double> minmax_rescale(const std::vector<double> &v) {
  const auto [lo, hi] = std::minmax_element(v.begin(), v.end());
  const double range = *hi - *lo;
  std::vector<double> out(v.size(), 1.0);
  // A flat signal carries no evidence; 1 leaves the product to the others.
  if (range <= 1e-12) return out;
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = (v[i] - *lo) / range;
  return out;
}

} // namespace

std::size_t frame_count(std::size_t n_samples, int sample_rate, double frame_period) {
  const std::size_t hop = std::max<std::size_t>(1, to_samples(frame_period, sample_rate));
  return std::max<std::size_t>(1, n_samples / hop);
}

ProsodicSignal znorm(const ProsodicSignal &signal) {
  ProsodicSignal out = signal;
  const std::size_t n = signal.size();
  if (n == 0) return out;
  const double mean = std::accumulate(signal.values.begin(), signal.values.end(), 0.0) / n;
  double var = 0.0;
  for (double v : signal.values) var += (v - mean) * (v - mean);
  const double sd = std::sqrt(var / n);
  if (sd <= 1e-12) {
    std::fill(out.values.begin(), out.values.end(), 0.0);
    return out;
  }
  for (auto &v : out.values) v = (v - mean) / sd;
  return out;
}

PitchTrack extract_f0(const AudioBuffer &audio, const SignalConfig &cfg, Exec exec) {
  validate(audio);
  const std::size_t n = audio.samples.size();
  const std::size_t window = to_samples(kPitchWindow, audio.sample_rate);
  if (n < window) throw Error("audio shorter than one pitch analysis window (40 ms)");
  const std::size_t hop = std::max<std::size_t>(1, to_samples(cfg.frame_period, audio.sample_rate));
  const std::size_t frames = frame_count(n, audio.sample_rate, cfg.frame_period);

  std::vector<PitchEstimate> raw(frames);
  const std::span<const double> samples(audio.samples);
  auto one = [&](std::size_t i) {
    const std::size_t start = window_start(i, hop, window, n);
    raw[i] = estimate_frame(samples.subspan(start, window), audio.sample_rate, cfg);
  };
  const auto count = static_cast<std::ptrdiff_t>(frames);
  if (exec == Exec::serial) {
    for (std::ptrdiff_t i = 0; i < count; ++i) one(static_cast<std::size_t>(i));
  } else {
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < count; ++i) one(static_cast<std::size_t>(i));
  }

  PitchTrack track;
  track.frame_period = cfg.frame_period;
  track.f0_hz.assign(frames, 0.0);
  track.voiced.assign(frames, false);
  // Median over the voiced frames of a 5-frame neighbourhood.
  for (std::size_t i = 0; i < frames; ++i) {
    if (!raw[i].voiced) continue;
    std::vector<double> hood;
    for (std::size_t j = (i >= 2 ? i - 2 : 0); j <= std::min(frames - 1, i + 2); ++j)
      if (raw[j].voiced) hood.push_back(raw[j].f0);
    track.f0_hz[i] = median_of(std::move(hood));
    track.voiced[i] = true;
  }
  return track;
}

ProsodicSignal extract_energy(const AudioBuffer &audio, const SignalConfig &cfg) {
  validate(audio);
  const std::size_t n = audio.samples.size();
  const std::size_t window = to_samples(kEnergyWindow, audio.sample_rate);
  if (n < window) throw Error("audio shorter than one energy analysis window (30 ms)");
  const std::size_t hop = std::max<std::size_t>(1, to_samples(cfg.frame_period, audio.sample_rate));
  const std::size_t frames = frame_count(n, audio.sample_rate, cfg.frame_period);

  ProsodicSignal out;
  out.kind = SignalKind::energy_db;
  out.frame_period = cfg.frame_period;
  out.values.resize(frames);

  if (!cfg.energy_band) {
    for (std::size_t i = 0; i < frames; ++i) {
      const std::size_t start = window_start(i, hop, window, n);
      double acc = 0.0;
      for (std::size_t k = start; k < start + window; ++k) acc += audio.samples[k] * audio.samples[k];
      const double rms = std::sqrt(acc / static_cast<double>(window));
      out.values[i] = 20.0 * std::log10(rms + kEnergyFloor);
    }
    return out;
  }

  const auto [lo_hz, hi_hz] = *cfg.energy_band;
  std::size_t nfft = 1;
  while (nfft < window) nfft *= 2;
  std::vector<std::size_t> starts(frames);
  for (std::size_t i = 0; i < frames; ++i) starts[i] = window_start(i, hop, window, n);
  const Matrix power = kernels::power_frames(audio.samples, starts, window, nfft, Exec::serial);
  const double bin_hz = static_cast<double>(audio.sample_rate) / static_cast<double>(nfft);
  const double norm = static_cast<double>(nfft) * kernels::hann_energy(window);
  for (std::size_t i = 0; i < frames; ++i) {
    double acc = 0.0;
    for (std::size_t k = 0; k < power.cols(); ++k) {
      const double hz = static_cast<double>(k) * bin_hz;
      if (hz < lo_hz || hz > hi_hz) continue;
      const bool edge = k == 0 || k == nfft / 2;
      acc += (edge ? 1.0 : 2.0) * power(i, k);
    }
    out.values[i] = 20.0 * std::log10(std::sqrt(acc / norm) + kEnergyFloor);
  }
  return out;
}

ProsodicSignal f0_semitones(const PitchTrack &track) {
  std::vector<std::pair<std::size_t, double>> anchors;
  for (std::size_t i = 0; i < track.size(); ++i)
    if (track.voiced[i]) anchors.emplace_back(i, 12.0 * std::log2(track.f0_hz[i] / 100.0));
  ProsodicSignal out;
  out.kind = SignalKind::f0_semitones;
  out.frame_period = track.frame_period;
  out.values = interpolate_anchors(anchors, track.size());
  return out;
}

ProsodicSignal duration_signal(const Alignment &alignment, std::size_t n_frames,
                               double frame_period) {
  if (alignment.words.empty()) throw Error("empty alignment");
  std::vector<std::pair<std::size_t, double>> anchors;
  auto add = [&](double time, double value) {
    const auto frame = static_cast<std::size_t>(std::lround(time / frame_period));
    if (frame >= n_frames)
      throw Error("duration anchor at " + std::to_string(time) + " s beyond " +
                  std::to_string(n_frames) + " frames");
    anchors.emplace_back(frame, value);
  };
  for (const auto *w : alignment.spoken_words()) add(w->midpoint(), w->length());
  for (const auto &p : alignment.pauses()) add(p.midpoint(), 0.0);
  std::stable_sort(anchors.begin(), anchors.end(),
                   [](const auto &a, const auto &b) { return a.first < b.first; });
  // Coincident anchors (sub-frame intervals): keep the first.
  anchors.erase(std::unique(anchors.begin(), anchors.end(),
                            [](const auto &a, const auto &b) { return a.first == b.first; }),
                anchors.end());

  ProsodicSignal out;
  out.kind = SignalKind::duration_seconds;
  out.frame_period = frame_period;
  out.values = interpolate_anchors(anchors, n_frames);
  return out;
}

ProsodicSignal weighted_sum(const ProsodicSignal &f0n, const ProsodicSignal &enn,
                            const ProsodicSignal &dun, const SignalWeights &w) {
  require_same_grid(f0n, enn, dun);
  ProsodicSignal out;
  out.kind = SignalKind::combined;
  out.frame_period = f0n.frame_period;
  out.values.resize(f0n.size());
  for (std::size_t i = 0; i < f0n.size(); ++i)
    out.values[i] = w.f0 * f0n.values[i] + w.energy * enn.values[i] + w.duration * dun.values[i];
  return out;
}

ProsodicSignal combine_prominence(const ProsodicSignal &f0n, const ProsodicSignal &enn,
                                  const ProsodicSignal &dun, const SignalWeights &w) {
  return znorm(weighted_sum(f0n, enn, dun, w));
}

ProsodicSignal rescaled_product(const ProsodicSignal &f0n, const ProsodicSignal &enn,
                                const ProsodicSignal &dun) {
  require_same_grid(f0n, enn, dun);
  const auto a = minmax_rescale(f0n.values);
  const auto b = minmax_rescale(enn.values);
  const auto c = minmax_rescale(dun.values);
  ProsodicSignal out;
  out.kind = SignalKind::combined;
  out.frame_period = f0n.frame_period;
  out.values.resize(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out.values[i] = a[i] * b[i] * c[i];
  return out;
}

ProsodicSignal combine_boundary(const ProsodicSignal &f0n, const ProsodicSignal &enn,
                                const ProsodicSignal &dun) {
  return znorm(rescaled_product(f0n, enn, dun));
}

} // namespace prosody
