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

#include <stdexcept>
#include <string>

namespace prosody {

/// Raised for every recoverable failure in the toolkit: bad input files,
/// violated preconditions, inconsistent corpora.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Execution variant for the data-parallel kernels. `serial` is the reference
/// implementation kept for tests and benchmarks; `parallel` uses OpenMP.
enum class Exec { serial, parallel };

inline const char *exec_name(Exec e) {
  return e == Exec::serial ? "serial" : "parallel";
}

} // namespace prosody
