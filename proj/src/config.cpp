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

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>

#include "prosody/config.hpp"

namespace prosody {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

double to_double(std::string_view key, std::string_view v) {
  v = trim(v);
  double out = 0.0;
  auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || ptr != v.data() + v.size() || !std::isfinite(out))
    throw Error("config key '" + std::string(key) + "': expected a number, got '" +
                std::string(v) + "'");
  return out;
}

Range to_range(std::string_view key, std::string_view v) {
  v = trim(v);
  if (v.size() < 2 || v.front() != '[' || v.back() != ']')
    throw Error("config key '" + std::string(key) + "': expected [lo, hi]");
  v = v.substr(1, v.size() - 2);
  auto comma = v.find(',');
  if (comma == std::string_view::npos)
    throw Error("config key '" + std::string(key) + "': expected [lo, hi]");
  return {to_double(key, v.substr(0, comma)), to_double(key, v.substr(comma + 1))};
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string fmt(const Range &r) { return "[" + fmt(r.first) + ", " + fmt(r.second) + "]"; }

struct Key {
  std::string name;
  std::function<std::string(const Config &)> get;
  std::function<void(Config &, std::string_view)> set;
};

template <typename Access> Key number_key(std::string name, Access access) {
  return {name, [access](const Config &c) {
            Config copy = c;
            return fmt(access(copy));
          },
          [access, name](Config &c, std::string_view v) { access(c) = to_double(name, v); }};
}

template <typename Access> Key range_key(std::string name, Access access) {
  return {name, [access](const Config &c) {
            Config copy = c;
            return fmt(access(copy));
          },
          [access, name](Config &c, std::string_view v) { access(c) = to_range(name, v); }};
}

const std::vector<Key> &keys() {
  static const std::vector<Key> table = [] {
    std::vector<Key> k;
    k.push_back(number_key("signals.f0_min", [](Config &c) -> double & { return c.signals.f0_min; }));
    k.push_back(number_key("signals.f0_max", [](Config &c) -> double & { return c.signals.f0_max; }));
    k.push_back(number_key("signals.voicing_threshold",
                           [](Config &c) -> double & { return c.signals.voicing_threshold; }));
    k.push_back(number_key("signals.frame_period",
                           [](Config &c) -> double & { return c.signals.frame_period; }));
    k.push_back({"signals.energy_band",
                 [](const Config &c) {
                   return c.signals.energy_band ? fmt(*c.signals.energy_band) : std::string("\"off\"");
                 },
                 [](Config &c, std::string_view v) {
                   v = trim(v);
                   if (v == "\"off\"" || v == "off" || v == "'off'")
                     c.signals.energy_band.reset();
                   else
                     c.signals.energy_band = to_range("signals.energy_band", v);
                 }});
    k.push_back(number_key("signals.energy_range_db",
                           [](Config &c) -> double & { return c.energy_range_db; }));
    k.push_back(number_key("weights.f0", [](Config &c) -> double & { return c.weights.f0; }));
    k.push_back(number_key("weights.energy", [](Config &c) -> double & { return c.weights.energy; }));
    k.push_back(
        number_key("weights.duration", [](Config &c) -> double & { return c.weights.duration; }));
    k.push_back({"wavelet.scales_per_octave",
                 [](const Config &c) { return std::to_string(c.wavelet.scales_per_octave); },
                 [](Config &c, std::string_view v) {
                   const double d = to_double("wavelet.scales_per_octave", v);
                   if (d != std::floor(d)) throw Error("wavelet.scales_per_octave must be an integer");
                   c.wavelet.scales_per_octave = static_cast<int>(d);
                 }});
    k.push_back(
        number_key("wavelet.period_min", [](Config &c) -> double & { return c.wavelet.period_min; }));
    k.push_back(
        number_key("wavelet.period_max", [](Config &c) -> double & { return c.wavelet.period_max; }));
    k.push_back(range_key("wavelet.word_band", [](Config &c) -> Range & { return c.wavelet.word_band; }));
    k.push_back(
        range_key("wavelet.phrase_band", [](Config &c) -> Range & { return c.wavelet.phrase_band; }));
    k.push_back(number_key("wavelet.link_window_factor",
                           [](Config &c) -> double & { return c.wavelet.link_window_factor; }));
    k.push_back(range_key("thresholds.prominence",
                          [](Config &c) -> Range & { return c.thresholds.prominence; }));
    k.push_back(
        range_key("thresholds.boundary", [](Config &c) -> Range & { return c.thresholds.boundary; }));
    return k;
  }();
  return table;
}

const Key &find_key(std::string_view name) {
  for (const auto &k : keys())
    if (k.name == name) return k;
  throw Error("unknown config key '" + std::string(name) + "'");
}

// 64-bit FNV-1a.
std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

} // namespace

void Config::validate() const {
  auto fail = [](const std::string &key, const std::string &why) {
    throw Error("invalid config: " + key + " " + why);
  };
  if (!(signals.f0_min > 0.0)) fail("signals.f0_min", "must be positive");
  if (!(signals.f0_max > signals.f0_min)) fail("signals.f0_max", "must exceed f0_min");
  if (!(signals.voicing_threshold > 0.0 && signals.voicing_threshold < 1.0))
    fail("signals.voicing_threshold", "must be in (0, 1)");
  if (!(signals.frame_period > 0.0 && signals.frame_period <= 0.05))
    fail("signals.frame_period", "must be in (0, 0.05]");
  if (signals.energy_band && !(signals.energy_band->first >= 0.0 &&
                               signals.energy_band->first < signals.energy_band->second))
    fail("signals.energy_band", "must satisfy 0 <= lo < hi");
  if (!(energy_range_db > 0.0)) fail("signals.energy_range_db", "must be positive");
  if (weights.f0 < 0.0 || weights.energy < 0.0 || weights.duration < 0.0)
    fail("weights", "must be non-negative");
  if (!(weights.f0 > 0.0 || weights.energy > 0.0 || weights.duration > 0.0))
    fail("weights", "need at least one positive weight");
  if (wavelet.scales_per_octave < 1 || wavelet.scales_per_octave > 24)
    fail("wavelet.scales_per_octave", "must be in [1, 24]");
  if (!(wavelet.period_min > 0.0 && wavelet.period_max > wavelet.period_min))
    fail("wavelet.period_max", "must exceed period_min > 0");
  for (const auto &[name, band] : {std::pair{"wavelet.word_band", wavelet.word_band},
                                   std::pair{"wavelet.phrase_band", wavelet.phrase_band}})
    if (!(band.first < band.second)) fail(name, "must satisfy lo < hi");
  if (!(wavelet.link_window_factor > 0.0)) fail("wavelet.link_window_factor", "must be positive");
  for (const auto &[name, r] : {std::pair{"thresholds.prominence", thresholds.prominence},
                                std::pair{"thresholds.boundary", thresholds.boundary}})
    if (!(r.first < r.second) || r.first < 0.0) fail(name, "must satisfy 0 <= t1 < t2");
}

std::string Config::hash() const {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx",
                static_cast<unsigned long long>(fnv1a(to_config_text(*this))));
  return buf;
}

std::vector<std::string> config_keys() {
  std::vector<std::string> out;
  for (const auto &k : keys()) out.push_back(k.name);
  return out;
}

void set_config_value(Config &cfg, std::string_view key, std::string_view value) {
  find_key(key).set(cfg, value);
}

std::string get_config_value(const Config &cfg, std::string_view key) {
  return find_key(key).get(cfg);
}

Config parse_config(std::string_view text, Config base) {
  std::istringstream in{std::string(text)};
  std::string line, section;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string_view l = trim(line);
    if (auto hash = l.find('#'); hash != std::string_view::npos) l = trim(l.substr(0, hash));
    if (l.empty()) continue;
    if (l.front() == '[' && l.back() == ']' && l.find('=') == std::string_view::npos) {
      section = std::string(trim(l.substr(1, l.size() - 2)));
      continue;
    }
    auto eq = l.find('=');
    if (eq == std::string_view::npos)
      throw Error("config line " + std::to_string(lineno) + ": expected key = value");
    std::string key(trim(l.substr(0, eq)));
    if (!section.empty()) key = section + "." + key;
    set_config_value(base, key, trim(l.substr(eq + 1)));
  }
  base.validate();
  return base;
}

Config load_config(const std::string &path, Config base) {
  try {
    return parse_config(read_file(path), std::move(base));
  } catch (const Error &e) {
    throw Error(path + ": " + e.what());
  }
}

std::string to_config_text(const Config &cfg) {
  std::string out, section;
  for (const auto &k : keys()) {
    auto dot = k.name.find('.');
    std::string sec = k.name.substr(0, dot);
    if (sec != section) {
      if (!section.empty()) out += '\n';
      out += "[" + sec + "]\n";
      section = sec;
    }
    out += k.name.substr(dot + 1) + " = " + k.get(cfg) + "\n";
  }
  return out;
}

nlohmann::json config_to_json(const Config &cfg) {
  nlohmann::json j = nlohmann::json::object();
  for (const auto &k : keys()) {
    auto dot = k.name.find('.');
    const std::string sec = k.name.substr(0, dot), name = k.name.substr(dot + 1);
    const std::string text = k.get(cfg);
    j[sec][name] = text == "\"off\"" ? nlohmann::json("off") : nlohmann::json::parse(text);
  }
  return j;
}

Config config_from_json(const nlohmann::json &j, Config base) {
  if (!j.is_object()) throw Error("config must be a JSON object");
  for (const auto &[sec, body] : j.items()) {
    if (!body.is_object()) throw Error("config section '" + sec + "' must be an object");
    for (const auto &[name, value] : body.items()) {
      const std::string text = value.is_string() ? value.get<std::string>() : value.dump();
      set_config_value(base, sec + "." + name, text);
    }
  }
  base.validate();
  return base;
}

} // namespace prosody
