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

// Helpers shared by the unit and acceptance suites.

#pragma once

#include <filesystem>
#include <random>
#include <string>

#include <unistd.h>

#include "prosody/fixtures.hpp"

namespace prosody::testing {

/// Fresh scratch directory under the system temp dir, unique per process.
inline std::filesystem::path scratch_dir(const std::string &name) {
  auto dir = std::filesystem::temp_directory_path() /
             ("prosody_" + name + "_" + std::to_string(::getpid()));
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

/// Writes the default fixture corpus once per process and returns its path.
inline const std::filesystem::path &fixture_corpus() {
  static const std::filesystem::path dir = [] {
    auto d = scratch_dir("fixtures");
    fixtures::write_corpus(d, fixtures::generate());
    return d;
  }();
  return dir;
}

inline std::filesystem::path data_path(const std::string &name) {
  return std::filesystem::path(PROSODY_TEST_DATA) / name;
}

} // namespace prosody::testing
