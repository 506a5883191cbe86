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

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "prosody/ingest.hpp"

namespace prosody::fixtures {

enum class Role { normal, emphasized, deaccented };

struct DesignedWord {
  std::string word;
  Role role = Role::normal;
  bool pause_after = false;
};

struct Utterance {
  std::string id;
  std::vector<DesignedWord> design;
  AudioBuffer audio;
  std::vector<Interval> words;  // includes "sil" intervals
  std::vector<Interval> phones;
  std::string text;
};

struct Options {
  std::size_t count = 20;
  std::uint64_t seed = 20200525;
  int sample_rate = 16000;
};

/// Synthetic harmonic-source utterances with designed prominence (f0 peak,
/// level and lengthening) and designed pauses, plus matching alignments.
std::vector<Utterance> generate(const Options &opts = {});

/// Pronunciations for every fixture word, CMU dictionary format.
std::string lexicon_text();

/// Writes `wavs/`, `align/` (TSV pairs), `metadata.csv`, `lexicon.dict`
/// and `design.json` under `dir`.
void write_corpus(const std::filesystem::path &dir, const std::vector<Utterance> &utterances);

nlohmann::json design_json(const std::vector<Utterance> &utterances);

const char *role_name(Role r);

} // namespace prosody::fixtures
