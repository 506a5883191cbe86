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

#include <cmath>
#include <mutex>
#include <numbers>

#include <fftw3.h>

#include "prosody/kernels.hpp"

namespace prosody::kernels {

std::size_t reflect_index(std::ptrdiff_t i, std::size_t n) {
  if (n == 1) return 0;
  const auto period = static_cast<std::ptrdiff_t>(2 * (n - 1));
  std::ptrdiff_t m = i % period;
  if (m < 0) m += period;
  return static_cast<std::size_t>(m < static_cast<std::ptrdiff_t>(n) ? m : period - m);
}

namespace {

void convolve_row(std::span<const double> x, const std::vector<double> &k, std::span<double> out) {
  const auto n = x.size();
  const auto half = static_cast<std::ptrdiff_t>(k.size() / 2);
  for (std::size_t t = 0; t < n; ++t) {
    double acc = 0.0;
    const auto base = static_cast<std::ptrdiff_t>(t) - half;
    for (std::size_t j = 0; j < k.size(); ++j) {
      const std::ptrdiff_t src = base + static_cast<std::ptrdiff_t>(j);
      const std::size_t idx = (src >= 0 && src < static_cast<std::ptrdiff_t>(n))
                                  ? static_cast<std::size_t>(src)
                                  : reflect_index(src, n);
      acc += k[j] * x[idx];
    }
    out[t] = acc;
  }
}

} // namespace

Matrix convolve_rows(std::span<const double> signal, const std::vector<std::vector<double>> &taps,
                     Exec exec) {
  Matrix out(taps.size(), signal.size());
  const auto rows = static_cast<std::ptrdiff_t>(taps.size());
  if (exec == Exec::serial) {
    for (std::ptrdiff_t r = 0; r < rows; ++r) convolve_row(signal, taps[r], out.row(r));
  } else {
#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t r = 0; r < rows; ++r) convolve_row(signal, taps[r], out.row(r));
  }
  return out;
}

namespace {

void distance_row(const Matrix &a, const Matrix &b, std::size_t i, std::span<double> out) {
  const auto ai = a.row(i);
  for (std::size_t j = 0; j < b.rows(); ++j) {
    const auto bj = b.row(j);
    double acc = 0.0;
    for (std::size_t d = 0; d < ai.size(); ++d) {
      const double diff = ai[d] - bj[d];
      acc += diff * diff;
    }
    out[j] = std::sqrt(acc);
  }
}

} // namespace

Matrix pairwise_distances(const Matrix &a, const Matrix &b, Exec exec) {
  Matrix out(a.rows(), b.rows());
  const auto rows = static_cast<std::ptrdiff_t>(a.rows());
  if (exec == Exec::serial) {
    for (std::ptrdiff_t i = 0; i < rows; ++i) distance_row(a, b, i, out.row(i));
  } else {
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < rows; ++i) distance_row(a, b, i, out.row(i));
  }
  return out;
}

namespace {

std::vector<double> hann(std::size_t n) {
  std::vector<double> w(n);
  for (std::size_t i = 0; i < n; ++i)
    w[i] = 0.5 - 0.5 * std::cos(2.0 * std::numbers::pi * static_cast<double>(i) /
                                static_cast<double>(n));
  return w;
}

// FFTW planning is not thread-safe; executing a plan on fresh buffers is.
std::mutex plan_mutex;

struct R2CPlan {
  fftw_plan plan = nullptr;
  std::size_t nfft = 0;

  explicit R2CPlan(std::size_t n) : nfft(n) {
    std::lock_guard lock(plan_mutex);
    double *in = fftw_alloc_real(n);
    fftw_complex *out = fftw_alloc_complex(n / 2 + 1);
    plan = fftw_plan_dft_r2c_1d(static_cast<int>(n), in, out, FFTW_ESTIMATE);
    fftw_free(in);
    fftw_free(out);
  }
  ~R2CPlan() {
    std::lock_guard lock(plan_mutex);
    fftw_destroy_plan(plan);
  }
  R2CPlan(const R2CPlan &) = delete;
  R2CPlan &operator=(const R2CPlan &) = delete;
};

struct FrameWorkspace {
  double *in;
  fftw_complex *out;
  explicit FrameWorkspace(std::size_t nfft)
      : in(fftw_alloc_real(nfft)), out(fftw_alloc_complex(nfft / 2 + 1)) {}
  ~FrameWorkspace() {
    fftw_free(in);
    fftw_free(out);
  }
  FrameWorkspace(const FrameWorkspace &) = delete;
  FrameWorkspace &operator=(const FrameWorkspace &) = delete;
};

void power_frame(std::span<const double> samples, std::size_t start, std::size_t window,
                 const std::vector<double> &win, const R2CPlan &plan, FrameWorkspace &ws,
                 std::span<double> out) {
  for (std::size_t i = 0; i < plan.nfft; ++i) {
    const std::size_t s = start + i;
    ws.in[i] = (i < window && s < samples.size()) ? samples[s] * win[i] : 0.0;
  }
  fftw_execute_dft_r2c(plan.plan, ws.in, ws.out);
  for (std::size_t k = 0; k < out.size(); ++k)
    out[k] = ws.out[k][0] * ws.out[k][0] + ws.out[k][1] * ws.out[k][1];
}

} // namespace

double hann_energy(std::size_t window) {
  double acc = 0.0;
  for (double w : hann(window)) acc += w * w;
  return acc;
}

Matrix power_frames(std::span<const double> samples, std::span<const std::size_t> starts,
                    std::size_t window, std::size_t nfft, Exec exec) {
  if (nfft < window) throw Error("fft size smaller than window");
  const std::vector<double> win = hann(window);
  const R2CPlan plan(nfft);
  Matrix out(starts.size(), nfft / 2 + 1);
  const auto n = static_cast<std::ptrdiff_t>(starts.size());
  if (exec == Exec::serial) {
    FrameWorkspace ws(nfft);
    for (std::ptrdiff_t f = 0; f < n; ++f)
      power_frame(samples, starts[f], window, win, plan, ws, out.row(f));
  } else {
#pragma omp parallel
    {
      FrameWorkspace ws(nfft);
#pragma omp for schedule(static)
      for (std::ptrdiff_t f = 0; f < n; ++f)
        power_frame(samples, starts[f], window, win, plan, ws, out.row(f));
    }
  }
  return out;
}

} // namespace prosody::kernels
