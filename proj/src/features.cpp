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

#include "prosody/eval.hpp"
#include "prosody/kernels.hpp"

namespace prosody {

namespace {

double hz_to_mel(double hz) { return 2595.0 * std::log10(1.0 + hz / 700.0); }
double mel_to_hz(double mel) { return 700.0 * (std::pow(10.0, mel / 2595.0) - 1.0); }

} // namespace

Matrix mel_filterbank(std::size_t n_bands, std::size_t nfft, int sample_rate, double max_hz) {
  const std::size_t bins = nfft / 2 + 1;
  const double top = std::min(max_hz, 0.5 * sample_rate);
  const double mel_top = hz_to_mel(top);
  std::vector<double> edges(n_bands + 2);
  for (std::size_t i = 0; i < edges.size(); ++i)
    edges[i] = mel_to_hz(mel_top * static_cast<double>(i) / static_cast<double>(n_bands + 1));

  Matrix fb(n_bands, bins);
  const double bin_hz = static_cast<double>(sample_rate) / static_cast<double>(nfft);
  for (std::size_t b = 0; b < n_bands; ++b) {
    const double lo = edges[b], mid = edges[b + 1], hi = edges[b + 2];
    for (std::size_t k = 0; k < bins; ++k) {
      const double hz = static_cast<double>(k) * bin_hz;
      if (hz > lo && hz < hi) fb(b, k) = hz <= mid ? (hz - lo) / (mid - lo) : (hi - hz) / (hi - mid);
    }
  }
  return fb;
}

FeatureMatrix mel_features(const AudioBuffer &audio, Exec exec) {
  validate(audio);
  const auto window = static_cast<std::size_t>(std::lround(kMelWindow * audio.sample_rate));
  const auto hop = static_cast<std::size_t>(std::lround(kMelHop * audio.sample_rate));
  const std::size_t n = audio.samples.size();
  if (n < window) throw Error("audio shorter than one 25 ms feature window");
  std::size_t nfft = 1;
  while (nfft < window) nfft *= 2;

  const std::size_t frames = 1 + (n - window) / hop;
  std::vector<std::size_t> starts(frames);
  for (std::size_t f = 0; f < frames; ++f) starts[f] = f * hop;

  const Matrix power = kernels::power_frames(audio.samples, starts, window, nfft, exec);
  const Matrix fb = mel_filterbank(kMelBands, nfft, audio.sample_rate, kMelMaxHz);

  FeatureMatrix out;
  out.values = Matrix(frames, kMelBands);
  for (std::size_t f = 0; f < frames; ++f) {
    const auto spec = power.row(f);
    for (std::size_t b = 0; b < kMelBands; ++b) {
      const auto w = fb.row(b);
      double acc = 0.0;
      for (std::size_t k = 0; k < w.size(); ++k) acc += w[k] * spec[k];
      out.values(f, b) = std::log(std::max(acc, kLogFloor));
    }
  }
  return out;
}

} // namespace prosody
