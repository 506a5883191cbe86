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

#include <optional>
#include <utility>
#include <vector>

#include "prosody/common.hpp"
#include "prosody/ingest.hpp"

namespace prosody {

enum class SignalKind { f0_semitones, energy_db, duration_seconds, combined };

/// Uniformly sampled frame-rate series. Frame i sits at time i * frame_period.
struct ProsodicSignal {
  std::vector<double> values;
  double frame_period = 0.005;
  SignalKind kind = SignalKind::combined;

  std::size_t size() const { return values.size(); }
};

struct PitchTrack {
  std::vector<double> f0_hz; // 0 where unvoiced
  std::vector<bool> voiced;
  double frame_period = 0.005;

  std::size_t size() const { return f0_hz.size(); }
};

struct SignalWeights {
  double f0 = 1.0;
  double energy = 0.5;
  double duration = 1.0;
};

struct SignalConfig {
  double f0_min = 60.0;
  double f0_max = 400.0;
  double voicing_threshold = 0.45;
  double frame_period = 0.005;
  /// Optional band-pass (Hz) for the energy signal; full band when unset.
  std::optional<std::pair<double, double>> energy_band;
};

inline constexpr double kPitchWindow = 0.040;
inline constexpr double kEnergyWindow = 0.030;
inline constexpr double kEnergyFloor = 1e-10;

/// Number of analysis frames for `n_samples` at the configured hop.
std::size_t frame_count(std::size_t n_samples, int sample_rate, double frame_period);

ProsodicSignal znorm(const ProsodicSignal &signal);

PitchTrack extract_f0(const AudioBuffer &audio, const SignalConfig &cfg = {},
                      Exec exec = Exec::parallel);

ProsodicSignal extract_energy(const AudioBuffer &audio, const SignalConfig &cfg = {});

/// 12 * log2(hz / 100) on voiced frames; unvoiced gaps linearly interpolated,
/// edges held constant. All-unvoiced tracks map to zeros.
ProsodicSignal f0_semitones(const PitchTrack &track);

ProsodicSignal duration_signal(const Alignment &alignment, std::size_t n_frames,
                               double frame_period);

ProsodicSignal combine_prominence(const ProsodicSignal &f0n, const ProsodicSignal &enn,
                                  const ProsodicSignal &dun, const SignalWeights &w);

/// Weighted sum before the final normalization (exposed for tests).
ProsodicSignal weighted_sum(const ProsodicSignal &f0n, const ProsodicSignal &enn,
                            const ProsodicSignal &dun, const SignalWeights &w);

ProsodicSignal combine_boundary(const ProsodicSignal &f0n, const ProsodicSignal &enn,
                                const ProsodicSignal &dun);

/// Per-frame product of the min-max rescaled inputs, before normalization.
ProsodicSignal rescaled_product(const ProsodicSignal &f0n, const ProsodicSignal &enn,
                                const ProsodicSignal &dun);

} // namespace prosody
