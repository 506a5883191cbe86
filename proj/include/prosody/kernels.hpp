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

// Data-parallel inner loops. Every kernel has a serial reference path and an
// OpenMP path selected by `Exec`; both produce bit-identical results because
// each output element is computed by the same sequence of operations.

#include <span>
#include <vector>

#include "prosody/common.hpp"
#include "prosody/matrix.hpp"

namespace prosody::kernels {

/// Reflect-pads index `i` into [0, n) (mirror without repeating the edge
/// sample), valid for any offset.
std::size_t reflect_index(std::ptrdiff_t i, std::size_t n);

/// Correlates `signal` with each kernel in `taps` (identical to convolution
/// for the symmetric wavelet kernels); kernel k is centred, so taps[k].size()
/// must be odd. Edges use reflective padding. Output is taps.size() x
/// signal.size().
Matrix convolve_rows(std::span<const double> signal, const std::vector<std::vector<double>> &taps,
                     Exec exec);

/// Euclidean distance between every row of `a` and every row of `b`.
Matrix pairwise_distances(const Matrix &a, const Matrix &b, Exec exec);

/// Power spectrum |X_k|^2 (k = 0..nfft/2) of Hann-windowed frames of
/// `window` samples starting at each offset in `starts`. Row f is frame f.
Matrix power_frames(std::span<const double> samples, std::span<const std::size_t> starts,
                    std::size_t window, std::size_t nfft, Exec exec);

/// Sum of the squared Hann window of length `window`.
double hann_energy(std::size_t window);

} // namespace prosody::kernels
