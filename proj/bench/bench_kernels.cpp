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

// Serial reference vs OpenMP timings for the data-parallel kernels.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>

#include <omp.h>

#include "prosody/eval.hpp"
#include "prosody/fixtures.hpp"
#include "prosody/signals.hpp"
#include "prosody/wavelet.hpp"

using namespace prosody;

namespace {

double seconds(const std::function<void()> &fn, int reps) {
  fn(); // warm-up
  const auto t0 = std::chrono::steady_clock::now();
  for (int i = 0; i < reps; ++i) fn();
  const auto t1 = std::chrono::steady_clock::now();
  return std::chrono::duration<double>(t1 - t0).count() / reps;
}

void report(const char *name, const std::function<void(Exec)> &fn, int reps) {
  const double serial = seconds([&] { fn(Exec::serial); }, reps);
  const double parallel = seconds([&] { fn(Exec::parallel); }, reps);
  std::printf("%-18s serial %9.3f ms   parallel %9.3f ms   speedup %5.2fx\n", name, serial * 1e3,
              parallel * 1e3, serial / parallel);
}

} // namespace

int main() {
  std::printf("OpenMP threads: %d\n", omp_get_max_threads());

  fixtures::Options opts;
  opts.count = 1;
  const auto utt = fixtures::generate(opts).front();
  const AudioBuffer &audio = utt.audio;

  std::mt19937_64 gen(7);
  std::normal_distribution<double> noise;
  ProsodicSignal sig;
  sig.values.resize(2000);
  for (auto &v : sig.values) v = noise(gen);
  const ScaleBank bank = ScaleBank::geometric(0.08, 5.12, 2);

  report("cwt (10 s)", [&](Exec e) { (void)cwt(sig, bank, e); }, 5);
  report("f0 extraction", [&](Exec e) { (void)extract_f0(audio, {}, e); }, 3);
  report("mel features", [&](Exec e) { (void)mel_features(audio, e); }, 10);

  const FeatureMatrix a = mel_features(audio);
  report("dtw (self)", [&](Exec e) { (void)dtw_align(a, a, e); }, 5);
  return 0;
}
