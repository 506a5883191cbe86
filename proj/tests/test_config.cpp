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

#include "prosody/config.hpp"

using namespace prosody;

TEST_CASE("config text round trip and hash stability") {
  Config c;
  set_config_value(c, "weights.energy", "0.25");
  set_config_value(c, "thresholds.prominence", "[0.3, 1.1]");
  set_config_value(c, "signals.energy_band", "[500, 4000]");
  const auto back = parse_config(to_config_text(c));
  CHECK(back.weights.energy == 0.25);
  CHECK(back.thresholds.prominence == Range{0.3, 1.1});
  REQUIRE(back.signals.energy_band);
  CHECK(back.signals.energy_band->second == 4000);
  CHECK(back.hash() == c.hash());
  CHECK(c.hash() != Config{}.hash());
  CHECK(Config{}.hash() == Config{}.hash());
}

TEST_CASE("config file syntax") {
  const auto c = parse_config("# tuning\n[weights]\nf0 = 0.8\n\n[wavelet]\nphrase_band = [0.5, 4.0]\n"
                              "link_window_factor = 0.75 # inline\n");
  CHECK(c.weights.f0 == 0.8);
  CHECK(c.wavelet.phrase_band == Range{0.5, 4.0});
  CHECK(c.wavelet.link_window_factor == 0.75);
  CHECK_THROWS_AS(parse_config("[weights]\nbogus = 1\n"), Error);
  CHECK_THROWS_AS(parse_config("[weights]\nf0 = abc\n"), Error);
  CHECK_THROWS_AS(parse_config("f0 = 1\n"), Error);
}

TEST_CASE("config validation") {
  Config c;
  c.thresholds.boundary = {0.9, 0.3};
  CHECK_THROWS_WITH_AS(c.validate(), doctest::Contains("thresholds.boundary"), Error);
  Config f;
  f.signals.f0_min = 500;
  CHECK_THROWS_AS(f.validate(), Error);
  CHECK_NOTHROW(Config{}.validate());
}

TEST_CASE("every key reads back what was written") {
  Config c;
  for (const auto &key : config_keys()) {
    const auto v = get_config_value(c, key);
    Config d;
    set_config_value(d, key, v);
    CHECK(get_config_value(d, key) == v);
  }
  CHECK_THROWS_AS(set_config_value(c, "nope.key", "1"), Error);
}

TEST_CASE("json conversion merges partial objects") {
  const auto j = config_to_json(Config{});
  CHECK(j["weights"]["energy"] == 0.5);
  const auto c = config_from_json(nlohmann::json::parse(R"({"thresholds": {"prominence": [0.2, 0.6]}})"));
  CHECK(c.thresholds.prominence == Range{0.2, 0.6});
  CHECK(c.weights.f0 == 1.0);
  CHECK(config_from_json(j).hash() == Config{}.hash());
}
