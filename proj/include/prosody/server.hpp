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

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>

#include <json.hpp>

#include "prosody/config.hpp"
#include "prosody/corpus.hpp"
#include "prosody/labeler.hpp"

namespace httplib {
class Server;
}

namespace prosody {

inline constexpr std::size_t kMaxSeriesPoints = 2000;
inline constexpr std::size_t kMaxScalogramColumns = 400;

/// Every stride-th value, stride chosen so at most `max_points` remain.
nlohmann::json downsample(std::span<const double> values, std::size_t max_points);

/// Payload of GET /api/utterance/{id} and POST /api/annotate.
nlohmann::json utterance_payload(const std::string &id, const AnnotationTrace &trace,
                                 const Config &config);

/// HTTP API over a read-only corpus. Handlers are stateless apart from a
/// registry of configs seen so far, so `?config=<hash>` can refer back to
/// a configuration posted earlier.
class ApiServer {
public:
  ApiServer(CorpusIndex index, Config defaults, std::optional<std::string> static_dir = {});
  ~ApiServer();
  ApiServer(const ApiServer &) = delete;
  ApiServer &operator=(const ApiServer &) = delete;

  /// Binds to `port` (0 picks a free one) and returns the bound port.
  int bind(const std::string &host, int port);
  /// Blocks serving requests until stop().
  bool serve();
  void stop();
  void wait_until_ready() const;

  nlohmann::json utterances() const;
  nlohmann::json annotate(const std::string &id, const Config &config) const;
  /// Resolves a `config` query value: a known hash or inline JSON.
  Config resolve_config(const std::string &spec) const;
  void remember(const Config &config);

private:
  void routes();

  CorpusIndex index_;
  Config defaults_;
  std::optional<std::string> static_dir_;
  std::unique_ptr<httplib::Server> server_;
  mutable std::mutex mutex_;
  std::map<std::string, Config> known_;
};

} // namespace prosody
