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
#include <numbers>
#include <tuple>

#include "prosody/kernels.hpp"
#include "prosody/wavelet.hpp"

namespace prosody {

ScaleBank ScaleBank::geometric(double period_min, double period_max, int scales_per_octave) {
  if (!(period_min > 0.0) || !(period_max > period_min) || scales_per_octave < 1)
    throw Error("invalid scale bank parameters");
  const double octaves = std::log2(period_max / period_min);
  const auto steps = static_cast<int>(std::lround(octaves * scales_per_octave));
  ScaleBank bank;
  for (int k = 0; k <= steps; ++k)
    bank.periods.push_back(period_min * std::exp2(static_cast<double>(k) / scales_per_octave));
  return bank;
}

ScaleBand band_for(const ScaleBank &bank, double lo, double hi) {
  constexpr double tol = 1e-9;
  std::size_t first = bank.size(), last = 0;
  for (std::size_t k = 0; k < bank.size(); ++k) {
    const double p = bank.periods[k];
    if (p >= lo * (1.0 - tol) && p <= hi * (1.0 + tol)) {
      first = std::min(first, k);
      last = k;
    }
  }
  if (first == bank.size())
    throw Error("no scales with period in [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
  return {first, last};
}

double mexican_hat_centre_frequency() { return std::sqrt(2.5) / (2.0 * std::numbers::pi); }

double mexican_hat(double t) {
  static const double norm = 2.0 / (std::sqrt(3.0) * std::pow(std::numbers::pi, 0.25));
  return norm * (1.0 - t * t) * std::exp(-0.5 * t * t);
}

Scalogram cwt(const ProsodicSignal &signal, const ScaleBank &bank, Exec exec) {
  if (signal.size() < 2) throw Error("cwt needs at least 2 frames");
  for (double v : signal.values)
    if (!std::isfinite(v)) throw Error("cwt input is not finite");

  // Scale a (in frames) whose peak response sits at the given period.
  std::vector<std::vector<double>> taps;
  taps.reserve(bank.size());
  for (double period : bank.periods) {
    const double a = mexican_hat_centre_frequency() * period / signal.frame_period;
    const auto half = static_cast<std::ptrdiff_t>(std::ceil(5.0 * a));
    std::vector<double> k(static_cast<std::size_t>(2 * half + 1));
    const double gain = 1.0 / std::sqrt(a);
    for (std::ptrdiff_t t = -half; t <= half; ++t)
      k[static_cast<std::size_t>(t + half)] = gain * mexican_hat(static_cast<double>(t) / a);
    taps.push_back(std::move(k));
  }

  Scalogram out;
  out.bank = bank;
  out.frame_period = signal.frame_period;
  out.coefficients = kernels::convolve_rows(signal.values, taps, exec);
  return out;
}

double line_strength(const Line &line, std::size_t band_size) {
  if (band_size < line.points.size() || band_size == 0)
    throw Error("band size smaller than line length");
  const double sign = line.polarity == Polarity::ridge ? 1.0 : -1.0;
  double acc = 0.0;
  for (const auto &p : line.points) acc += std::max(0.0, sign * p.amplitude);
  return acc / static_cast<double>(band_size);
}

namespace {

std::vector<std::size_t> extrema(std::span<const double> row, double sign) {
  std::vector<std::size_t> out;
  for (std::size_t f = 1; f + 1 < row.size(); ++f) {
    const double c = sign * row[f];
    if (c > sign * row[f - 1] && c > sign * row[f + 1]) out.push_back(f);
  }
  return out;
}

} // namespace

std::vector<Line> track_lines(const Scalogram &scalogram, Polarity polarity, ScaleBand band,
                              double link_window_factor) {
  if (band.last < band.first || band.last >= scalogram.n_scales())
    throw Error("empty or out-of-range scale band");
  const double sign = polarity == Polarity::ridge ? 1.0 : -1.0;
  const auto &coef = scalogram.coefficients;

  std::vector<Line> lines;
  std::vector<std::size_t> live; // indices into `lines`

  auto start_line = [&](std::size_t scale, std::size_t frame) {
    Line l;
    l.polarity = polarity;
    l.anchor_frame = frame;
    l.points.push_back({scale, frame, coef(scale, frame)});
    lines.push_back(std::move(l));
    return lines.size() - 1;
  };

  for (std::size_t f : extrema(coef.row(band.first), sign)) live.push_back(start_line(band.first, f));

  for (std::size_t s = band.first + 1; s <= band.last; ++s) {
    const auto ext = extrema(coef.row(s), sign);
    const double window =
        link_window_factor * scalogram.bank.periods[s] / scalogram.frame_period;

    // (distance, line frame, extremum frame, live slot, extremum slot)
    std::vector<std::tuple<double, std::size_t, std::size_t, std::size_t, std::size_t>> cand;
    for (std::size_t li = 0; li < live.size(); ++li) {
      const std::size_t from = lines[live[li]].points.back().frame;
      for (std::size_t ei = 0; ei < ext.size(); ++ei) {
        const double d = std::abs(static_cast<double>(ext[ei]) - static_cast<double>(from));
        if (d <= window) cand.emplace_back(d, from, ext[ei], li, ei);
      }
    }
    std::sort(cand.begin(), cand.end());

    std::vector<bool> line_done(live.size(), false), ext_taken(ext.size(), false);
    std::vector<std::size_t> next_live;
    for (const auto &[d, from, to, li, ei] : cand) {
      if (line_done[li] || ext_taken[ei]) continue;
      line_done[li] = ext_taken[ei] = true;
      lines[live[li]].points.push_back({s, to, coef(s, to)});
      next_live.push_back(live[li]);
    }
    for (std::size_t ei = 0; ei < ext.size(); ++ei)
      if (!ext_taken[ei]) next_live.push_back(start_line(s, ext[ei]));
    live = std::move(next_live);
  }

  for (auto &l : lines) l.strength = line_strength(l, band.size());
  std::stable_sort(lines.begin(), lines.end(), [](const Line &a, const Line &b) {
    return std::pair(a.points.front().scale, a.anchor_frame) <
           std::pair(b.points.front().scale, b.anchor_frame);
  });
  return lines;
}

} // namespace prosody
