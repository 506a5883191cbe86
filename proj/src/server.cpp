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

#include <algorithm>
#include <cmath>

#include <httplib.h>

#include "prosody/server.hpp"

namespace prosody {

nlohmann::json downsample(std::span<const double> values, std::size_t max_points) {
  const std::size_t stride = std::max<std::size_t>(1, (values.size() + max_points - 1) / max_points);
  nlohmann::json out = nlohmann::json::array();
  for (std::size_t i = 0; i < values.size(); i += stride) out.push_back(round4(values[i]));
  return out;
}

namespace {

nlohmann::json series_json(const ProsodicSignal &s) {
  const std::size_t stride =
      std::max<std::size_t>(1, (s.size() + kMaxSeriesPoints - 1) / kMaxSeriesPoints);
  return {{"frame_period", s.frame_period},
          {"stride", stride},
          {"values", downsample(s.values, kMaxSeriesPoints)}};
}

nlohmann::json scalogram_json(const Scalogram &s, ScaleBand band) {
  nlohmann::json rows = nlohmann::json::array();
  for (std::size_t r = 0; r < s.n_scales(); ++r)
    rows.push_back(downsample(s.coefficients.row(r), kMaxScalogramColumns));
  const std::size_t stride =
      std::max<std::size_t>(1, (s.n_frames() + kMaxScalogramColumns - 1) / kMaxScalogramColumns);
  return {{"periods", s.bank.periods},
          {"frame_period", s.frame_period},
          {"stride", stride},
          {"band", {band.first, band.last}},
          {"rows", rows}};
}

nlohmann::json lines_json(const std::vector<Line> &lines) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto &l : lines) {
    nlohmann::json pts = nlohmann::json::array();
    for (const auto &p : l.points) pts.push_back({p.scale, p.frame, round4(p.amplitude)});
    out.push_back({{"anchor_frame", l.anchor_frame}, {"strength", round4(l.strength)}, {"points", pts}});
  }
  return out;
}

void send_json(httplib::Response &res, const nlohmann::json &j, int status = 200) {
  res.status = status;
  res.set_content(j.dump(), "application/json; charset=utf-8");
}

void send_error(httplib::Response &res, int status, const std::string &message) {
  send_json(res, {{"error", message}}, status);
}

} // namespace

nlohmann::json utterance_payload(const std::string &id, const AnnotationTrace &trace,
                                 const Config &config) {
  nlohmann::json words = nlohmann::json::array();
  for (const auto &w : trace.words) words.push_back(word_json(w));
  return {{"id", id},
          {"config_hash", config.hash()},
          {"config", config_to_json(config)},
          {"thresholds",
           {{"prominence", {config.thresholds.prominence.first, config.thresholds.prominence.second}},
            {"boundary", {config.thresholds.boundary.first, config.thresholds.boundary.second}}}},
          {"signals",
           {{"f0", series_json(trace.f0)},
            {"energy", series_json(trace.energy)},
            {"duration", series_json(trace.duration)},
            {"prominence", series_json(trace.prominence_signal)},
            {"boundary", series_json(trace.boundary_signal)}}},
          {"scalogram",
           {{"prominence", scalogram_json(trace.prominence_scalogram, trace.word_band)},
            {"boundary", scalogram_json(trace.boundary_scalogram, trace.phrase_band)}}},
          {"lines", {{"ridges", lines_json(trace.ridges)}, {"valleys", lines_json(trace.valleys)}}},
          {"words", words}};
}

ApiServer::ApiServer(CorpusIndex index, Config defaults, std::optional<std::string> static_dir)
    : index_(std::move(index)), defaults_(std::move(defaults)), static_dir_(std::move(static_dir)),
      server_(std::make_unique<httplib::Server>()) {
  defaults_.validate();
  known_[defaults_.hash()] = defaults_;
  routes();
}

ApiServer::~ApiServer() { stop(); }

int ApiServer::bind(const std::string &host, int port) {
  if (port == 0) return server_->bind_to_any_port(host);
  return server_->bind_to_port(host, port) ? port : -1;
}

bool ApiServer::serve() { return server_->listen_after_bind(); }

void ApiServer::stop() {
  if (server_) server_->stop();
}

void ApiServer::wait_until_ready() const { server_->wait_until_ready(); }

void ApiServer::remember(const Config &config) {
  std::lock_guard lock(mutex_);
  known_.emplace(config.hash(), config);
}

Config ApiServer::resolve_config(const std::string &spec) const {
  if (spec.empty()) return defaults_;
  {
    std::lock_guard lock(mutex_);
    if (auto it = known_.find(spec); it != known_.end()) return it->second;
  }
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(spec);
  } catch (const nlohmann::json::exception &) {
    throw Error("config is neither a known hash nor inline JSON");
  }
  return config_from_json(j, defaults_);
}

nlohmann::json ApiServer::utterances() const {
  nlohmann::json out = nlohmann::json::array();
  for (const auto &e : index_.entries) {
    nlohmann::json item = {{"id", e.id}};
    try {
      const Alignment a = load_entry_alignment(e);
      item["n_words"] = a.spoken_words().size();
      item["duration"] = round4(a.end_time());
    } catch (const Error &err) {
      item["error"] = err.what();
    }
    out.push_back(item);
  }
  return out;
}

nlohmann::json ApiServer::annotate(const std::string &id, const Config &config) const {
  const auto *entry = index_.find(id);
  if (!entry) throw std::out_of_range("unknown utterance '" + id + "'");
  const AudioBuffer audio = read_audio(entry->audio);
  const Alignment align = load_entry_alignment(*entry);
  return utterance_payload(id, annotate_trace(audio, align, config, Exec::serial), config);
}

void ApiServer::routes() {
  auto guarded = [](auto fn) {
    return [fn](const httplib::Request &req, httplib::Response &res) {
      try {
        fn(req, res);
      } catch (const std::out_of_range &e) {
        send_error(res, 404, e.what());
      } catch (const std::exception &e) {
        send_error(res, 400, e.what());
      }
    };
  };

  server_->Get("/api/utterances", guarded([this](const httplib::Request &, httplib::Response &res) {
                 send_json(res, utterances());
               }));

  server_->Get(R"(/api/utterance/([^/]+))",
               guarded([this](const httplib::Request &req, httplib::Response &res) {
                 const Config cfg = resolve_config(req.get_param_value("config"));
                 send_json(res, annotate(req.matches[1], cfg));
               }));

  server_->Post("/api/annotate", guarded([this](const httplib::Request &req, httplib::Response &res) {
                  nlohmann::json body;
                  try {
                    body = nlohmann::json::parse(req.body);
                  } catch (const nlohmann::json::exception &e) {
                    throw Error(std::string("bad request body: ") + e.what());
                  }
                  if (!body.contains("id") || !body["id"].is_string())
                    throw Error("request needs a string 'id'");
                  Config cfg = defaults_;
                  if (body.contains("config")) {
                    const auto &c = body["config"];
                    cfg = c.is_string() ? resolve_config(c.get<std::string>())
                                        : config_from_json(c, defaults_);
                  }
                  remember(cfg);
                  send_json(res, annotate(body["id"].get<std::string>(), cfg));
                }));

  server_->Get(R"(/api/audio/([^/]+))",
               guarded([this](const httplib::Request &req, httplib::Response &res) {
                 const auto *entry = index_.find(req.matches[1]);
                 if (!entry) throw std::out_of_range("unknown utterance '" + std::string(req.matches[1]) + "'");
                 res.set_content(read_file(entry->audio), "audio/wav");
               }));

  server_->Get("/api/config", guarded([this](const httplib::Request &, httplib::Response &res) {
                 send_json(res, {{"config", config_to_json(defaults_)},
                                 {"config_hash", defaults_.hash()},
                                 {"text", to_config_text(defaults_)}});
               }));

  if (static_dir_) server_->set_mount_point("/", *static_dir_);
}

} // namespace prosody
