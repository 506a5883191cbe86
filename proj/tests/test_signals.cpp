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

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "prosody/signals.hpp"

using namespace prosody;

namespace {

AudioBuffer sine(double hz, double seconds, double amp = 0.5, int sr = 16000) {
  AudioBuffer a;
  a.sample_rate = sr;
  const auto n = static_cast<std::size_t>(seconds * sr);
  for (std::size_t i = 0; i < n; ++i)
    a.samples.push_back(amp * std::sin(2.0 * std::numbers::pi * hz * i / sr));
  return a;
}

ProsodicSignal sig(std::vector<double> v) {
  ProsodicSignal s;
  s.values = std::move(v);
  return s;
}

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  return v[v.size() / 2];
}

} // namespace

TEST_CASE("znorm") {
  const auto z = znorm(sig({1, 2, 3})).values;
  CHECK(z[0] == doctest::Approx(-1.2247).epsilon(1e-4));
  CHECK(z[1] == doctest::Approx(0.0));
  CHECK(z[2] == doctest::Approx(1.2247).epsilon(1e-4));
  for (double v : znorm(sig({5, 5, 5})).values) CHECK(v == 0.0);
  const auto again = znorm(sig(z)).values;
  for (std::size_t i = 0; i < z.size(); ++i) CHECK(std::abs(again[i] - z[i]) < 1e-9);
}

TEST_CASE("f0: pure 200 Hz sine") {
  const auto track = extract_f0(sine(200, 1.0));
  std::size_t interior = 0, good = 0;
  for (std::size_t i = 10; i + 10 < track.size(); ++i) {
    ++interior;
    good += track.voiced[i] && std::abs(track.f0_hz[i] - 200.0) <= 4.0;
  }
  CHECK(static_cast<double>(good) >= 0.95 * interior);
}

TEST_CASE("f0: silence is unvoiced, short audio rejected") {
  AudioBuffer z;
  z.sample_rate = 16000;
  z.samples.assign(16000, 0.0);
  const auto track = extract_f0(z);
  for (bool v : track.voiced) CHECK_FALSE(v);
  CHECK_THROWS_AS(extract_f0(sine(100, 0.02)), Error);
  CHECK_THROWS_AS(extract_energy(sine(100, 0.02)), Error);
}

TEST_CASE("f0: step from 100 Hz to 150 Hz") {
  auto a = sine(100, 0.5);
  const auto b = sine(150, 0.5);
  a.samples.insert(a.samples.end(), b.samples.begin(), b.samples.end());
  const auto track = extract_f0(a);
  std::vector<double> first, second;
  for (std::size_t i = 0; i < track.size(); ++i) {
    if (!track.voiced[i]) continue;
    (i < track.size() / 2 ? first : second).push_back(track.f0_hz[i]);
  }
  REQUIRE(!first.empty());
  REQUIRE(!second.empty());
  CHECK(std::abs(median(first) - 100.0) <= 4.0);
  CHECK(std::abs(median(second) - 150.0) <= 4.0);
}

TEST_CASE("f0: serial and parallel agree") {
  const auto a = sine(180, 0.6);
  const auto s = extract_f0(a, {}, Exec::serial), p = extract_f0(a, {}, Exec::parallel);
  CHECK(s.f0_hz == p.f0_hz);
  CHECK(s.voiced == p.voiced);
}

TEST_CASE("semitones interpolate across unvoiced gaps") {
  PitchTrack t;
  t.f0_hz = {0, 100, 0, 0, 400, 0};
  t.voiced = {false, true, false, false, true, false};
  const auto st = f0_semitones(t).values;
  CHECK(st[0] == doctest::Approx(0.0));
  CHECK(st[1] == doctest::Approx(0.0));
  CHECK(st[2] == doctest::Approx(8.0));
  CHECK(st[3] == doctest::Approx(16.0));
  CHECK(st[4] == doctest::Approx(24.0));
  CHECK(st[5] == doctest::Approx(24.0));
}

TEST_CASE("energy: closed-form sinusoid RMS, floor, scaling") {
  const auto e = extract_energy(sine(200, 1.0)).values;
  const double want = 20.0 * std::log10(0.5 / std::sqrt(2.0));
  for (std::size_t i = 10; i + 10 < e.size(); ++i) CHECK(std::abs(e[i] - want) <= 0.5);

  AudioBuffer z;
  z.sample_rate = 16000;
  z.samples.assign(8000, 0.0);
  for (double v : extract_energy(z).values) CHECK(v == doctest::Approx(-200.0));

  auto loud = sine(200, 1.0, 1.0), quiet = sine(200, 1.0, 0.5);
  const auto a = extract_energy(quiet).values, b = extract_energy(loud).values;
  for (std::size_t i = 0; i < a.size(); ++i) CHECK(std::abs(b[i] - a[i] - 6.0206) <= 0.01);
}

TEST_CASE("energy band restricts to the pass band") {
  auto a = sine(300, 0.5, 0.5);
  const auto hi = sine(4000, 0.5, 0.5);
  for (std::size_t i = 0; i < a.samples.size(); ++i) a.samples[i] += hi.samples[i];
  SignalConfig cfg;
  cfg.energy_band = std::pair(2000.0, 6000.0);
  const auto band = extract_energy(a, cfg).values;
  const auto one = extract_energy(sine(4000, 0.5, 0.5)).values;
  for (std::size_t i = 10; i + 10 < band.size(); ++i) CHECK(std::abs(band[i] - one[i]) < 1.0);
}

TEST_CASE("duration signal") {
  Alignment two = build_alignment("x", {{"a", 0.0, 0.2}, {"b", 0.2, 0.8}}, {});
  const auto d = duration_signal(two, 200, 0.005).values;
  CHECK(d[20] == doctest::Approx(0.2));
  CHECK(d[100] == doctest::Approx(0.6));
  CHECK(d[60] == doctest::Approx(0.4));
  CHECK(d[0] == doctest::Approx(0.2));
  CHECK(d[199] == doctest::Approx(0.6));

  Alignment one = build_alignment("x", {{"w", 0.0, 1.0}}, {});
  for (double v : duration_signal(one, 200, 0.005).values) CHECK(v == doctest::Approx(1.0));

  Alignment gap =
      build_alignment("x", {{"a", 0.0, 0.2}, {"sil", 0.2, 0.5}, {"b", 0.5, 0.7}}, {});
  const auto g = duration_signal(gap, 160, 0.005).values;
  CHECK(g[70] == doctest::Approx(0.0));
  CHECK(g[20] == doctest::Approx(0.2));
  CHECK(g[45] == doctest::Approx(0.1));

  CHECK_THROWS_AS(duration_signal(two, 50, 0.005), Error);
}

TEST_CASE("prominence combination") {
  const auto s = weighted_sum(sig({0.5}), sig({0.4}), sig({0.2}), {1.0, 0.5, 1.0});
  CHECK(s.values[0] == doctest::Approx(0.9));
  for (double v : combine_prominence(sig({0, 0, 0}), sig({0, 0, 0}), sig({0, 0, 0}), {}).values)
    CHECK(v == 0.0);
  const auto f = sig({1, 4, 2, 8});
  const auto proj = combine_prominence(f, sig({3, 1, 2, 0}), sig({9, 9, 1, 2}), {1, 0, 0}).values;
  const auto zf = znorm(f).values;
  for (std::size_t i = 0; i < zf.size(); ++i) CHECK(proj[i] == doctest::Approx(zf[i]));
  CHECK_THROWS_AS(weighted_sum(sig({1}), sig({1, 2}), sig({1}), {}), Error);
}

TEST_CASE("boundary combination") {
  // Rescaled values: f0 (0, .5, 1), energy (1, .5, 0), duration (1, .5, 0)
  const auto p = rescaled_product(sig({2, 3, 4}), sig({10, 7.5, 5}), sig({7, 6, 5})).values;
  CHECK(p[0] == 0.0);
  CHECK(p[1] == doctest::Approx(0.125));
  CHECK(p[2] == 0.0);
  for (double v : rescaled_product(sig({1, 1}), sig({2, 2}), sig({3, 3})).values)
    CHECK(v == doctest::Approx(1.0));
  CHECK_THROWS_AS(combine_boundary(sig({1}), sig({1, 2}), sig({1})), Error);
}
