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

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "prosody/signals.hpp"

namespace prosody {

using Range = std::pair<double, double>;

struct WaveletConfig {
  int scales_per_octave = 2;
  double period_min = 0.08;
  double period_max = 5.12;
  Range word_band{0.16, 1.28};
  Range phrase_band{0.64, 5.12};
  double link_window_factor = 0.5;
};

/// Lower-inclusive class boundaries (t1, t2) for the 3-class labels.
struct Thresholds {
  Range prominence{0.4, 1.0};
  Range boundary{0.35, 0.9};
};

/// Every tunable of the labeling pipeline. Serialized as a sectioned
/// key = value file; `hash()` fingerprints the canonical serialization.
struct Config {
  SignalConfig signals;
  /// Energy frames more than this far below the utterance maximum are
  /// clipped before normalization, so digital silence cannot dominate.
  double energy_range_db = 60.0;
  SignalWeights weights;
  WaveletConfig wavelet;
  Thresholds thresholds;

  /// Throws Error naming the first offending key.
  void validate() const;
  std::string hash() const;
};

/// Dotted key names accepted by `set_config_value` ("weights.f0", ...).
std::vector<std::string> config_keys();
void set_config_value(Config &cfg, std::string_view key, std::string_view value);
std::string get_config_value(const Config &cfg, std::string_view key);

/// Parses the sectioned text format; unknown keys are errors. Values not
/// present keep the defaults of `base`.
Config parse_config(std::string_view text, Config base = {});
Config load_config(const std::string &path, Config base = {});
std::string to_config_text(const Config &cfg);

nlohmann::json config_to_json(const Config &cfg);
/// Partial objects are merged over `base`.
Config config_from_json(const nlohmann::json &j, Config base = {});

} // namespace prosody
