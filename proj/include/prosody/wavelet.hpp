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

#include <vector>

#include "prosody/common.hpp"
#include "prosody/matrix.hpp"
#include "prosody/signals.hpp"

namespace prosody {

/// Geometrically spaced scale periods (seconds), finest first.
struct ScaleBank {
  std::vector<double> periods;

  static ScaleBank geometric(double period_min, double period_max, int scales_per_octave);
  std::size_t size() const { return periods.size(); }
};

/// Inclusive range of scale indices.
struct ScaleBand {
  std::size_t first = 0;
  std::size_t last = 0;

  std::size_t size() const { return last - first + 1; }
};

/// Scales whose period lies within [lo, hi] seconds; throws if none do.
ScaleBand band_for(const ScaleBank &bank, double lo, double hi);

struct Scalogram {
  Matrix coefficients; // scales x frames
  ScaleBank bank;
  double frame_period = 0.005;

  std::size_t n_scales() const { return coefficients.rows(); }
  std::size_t n_frames() const { return coefficients.cols(); }
};

/// Centre frequency of the Mexican hat in cycles per unit scale.
double mexican_hat_centre_frequency();
double mexican_hat(double t);

/// Mexican-hat CWT with L2-normalized kernels and reflective edge padding.
Scalogram cwt(const ProsodicSignal &signal, const ScaleBank &bank, Exec exec = Exec::parallel);

enum class Polarity { ridge, valley };

struct LinePoint {
  std::size_t scale = 0;
  std::size_t frame = 0;
  double amplitude = 0.0;
};

struct Line {
  Polarity polarity = Polarity::ridge;
  std::vector<LinePoint> points; // strictly increasing scale
  double strength = 0.0;
  std::size_t anchor_frame = 0;
};

/// Mean polarity-signed amplitude over the band, negatives clipped to zero.
double line_strength(const Line &line, std::size_t band_size);

/// Greedy fine-to-coarse linking of strict local extrema. A line at scale s-1
/// may join the nearest unclaimed extremum at scale s lying within
/// link_window_factor * periods[s] / frame_period frames.
std::vector<Line> track_lines(const Scalogram &scalogram, Polarity polarity, ScaleBand band,
                              double link_window_factor = 0.5);

} // namespace prosody
