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
#include <bit>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <sstream>

#include "prosody/ingest.hpp"

namespace prosody {

namespace {

constexpr std::uint16_t kFormatPcm = 1;
constexpr std::uint16_t kFormatFloat = 3;
constexpr std::uint16_t kFormatExtensible = 0xFFFE;

std::uint32_t le32(std::string_view b, std::size_t at) {
  return static_cast<std::uint32_t>(static_cast<unsigned char>(b[at])) |
         static_cast<std::uint32_t>(static_cast<unsigned char>(b[at + 1])) << 8 |
         static_cast<std::uint32_t>(static_cast<unsigned char>(b[at + 2])) << 16 |
         static_cast<std::uint32_t>(static_cast<unsigned char>(b[at + 3])) << 24;
}

std::uint16_t le16(std::string_view b, std::size_t at) {
  return static_cast<std::uint16_t>(static_cast<unsigned char>(b[at]) |
                                    static_cast<unsigned char>(b[at + 1]) << 8);
}

void put32(std::string &out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xFF));
}

void put16(std::string &out, std::uint16_t v) {
  out.push_back(static_cast<char>(v & 0xFF));
  out.push_back(static_cast<char>(v >> 8));
}

double decode_sample(std::string_view data, std::size_t at, std::uint16_t format, int bits) {
  if (format == kFormatFloat) {
    float f;
    std::uint32_t raw = le32(data, at);
    std::memcpy(&f, &raw, sizeof f);
    return std::clamp(static_cast<double>(f), -1.0, 1.0);
  }
  if (bits == 16) {
    auto v = static_cast<std::int16_t>(le16(data, at));
    return v / 32768.0;
  }
  // 24-bit: sign-extend from the top byte.
  std::int32_t v = static_cast<unsigned char>(data[at]) |
                   static_cast<unsigned char>(data[at + 1]) << 8 |
                   static_cast<signed char>(data[at + 2]) * 65536;
  return v / 8388608.0;
}

} // namespace

void validate(const AudioBuffer &audio) {
  if (audio.samples.empty()) throw Error("zero-length audio");
  if (audio.sample_rate < 8000)
    throw Error("sample rate " + std::to_string(audio.sample_rate) + " below 8000 Hz");
  for (double s : audio.samples)
    if (!(s >= -1.0 && s <= 1.0)) throw Error("audio sample outside [-1, 1]");
}

AudioBuffer decode_wav(std::string_view bytes) {
  if (bytes.size() < 12 || bytes.substr(0, 4) != "RIFF" || bytes.substr(8, 4) != "WAVE")
    throw Error("not a RIFF/WAVE file");

  std::uint16_t format = 0, channels = 0, bits = 0;
  std::uint32_t rate = 0;
  std::string_view data;
  bool have_fmt = false, have_data = false;

  std::size_t pos = 12;
  while (pos + 8 <= bytes.size()) {
    std::string_view id = bytes.substr(pos, 4);
    std::size_t size = le32(bytes, pos + 4);
    std::size_t body = pos + 8;
    std::size_t avail = std::min(size, bytes.size() - body);
    if (id == "fmt ") {
      if (avail < 16) throw Error("truncated fmt chunk");
      format = le16(bytes, body);
      channels = le16(bytes, body + 2);
      rate = le32(bytes, body + 4);
      bits = le16(bytes, body + 14);
      if (format == kFormatExtensible) {
        if (avail < 40) throw Error("truncated WAVE_FORMAT_EXTENSIBLE header");
        format = le16(bytes, body + 24); // first two bytes of the subformat GUID
      }
      have_fmt = true;
    } else if (id == "data") {
      data = bytes.substr(body, avail);
      have_data = true;
    }
    pos = body + size + (size & 1);
  }
  if (!have_fmt || !have_data) throw Error("missing fmt or data chunk");

  bool supported = (format == kFormatPcm && (bits == 16 || bits == 24)) ||
                   (format == kFormatFloat && bits == 32);
  if (!supported)
    throw Error("unsupported encoding (format " + std::to_string(format) + ", " +
                std::to_string(bits) + " bit)");
  if (channels == 0) throw Error("wav header declares zero channels");

  const std::size_t width = bits / 8;
  const std::size_t frame_bytes = width * channels;
  const std::size_t n = data.size() / frame_bytes;
  if (n == 0) throw Error("zero-length audio");

  AudioBuffer out;
  out.sample_rate = static_cast<int>(rate);
  out.samples.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    double acc = 0.0;
    for (std::size_t c = 0; c < channels; ++c)
      acc += decode_sample(data, i * frame_bytes + c * width, format, bits);
    out.samples[i] = acc / channels;
  }
  validate(out);
  return out;
}

AudioBuffer read_audio(const std::filesystem::path &path) {
  std::string bytes = read_file(path);
  try {
    return decode_wav(bytes);
  } catch (const Error &e) {
    throw Error(path.string() + ": " + e.what());
  }
}

std::string encode_wav(const AudioBuffer &audio, SampleFormat fmt) {
  const int bits = fmt == SampleFormat::pcm16 ? 16 : fmt == SampleFormat::pcm24 ? 24 : 32;
  const std::uint32_t width = bits / 8;
  const auto data_size = static_cast<std::uint32_t>(audio.samples.size() * width);

  std::string out;
  out.reserve(44 + data_size);
  out += "RIFF";
  put32(out, 36 + data_size);
  out += "WAVEfmt ";
  put32(out, 16);
  put16(out, fmt == SampleFormat::float32 ? kFormatFloat : kFormatPcm);
  put16(out, 1);
  put32(out, static_cast<std::uint32_t>(audio.sample_rate));
  put32(out, static_cast<std::uint32_t>(audio.sample_rate) * width);
  put16(out, static_cast<std::uint16_t>(width));
  put16(out, static_cast<std::uint16_t>(bits));
  out += "data";
  put32(out, data_size);

  for (double s : audio.samples) {
    s = std::clamp(s, -1.0, 1.0);
    switch (fmt) {
    case SampleFormat::pcm16: {
      auto v = static_cast<std::int32_t>(std::lround(s * 32768.0));
      put16(out, static_cast<std::uint16_t>(std::clamp(v, -32768, 32767)));
      break;
    }
    case SampleFormat::pcm24: {
      auto v = static_cast<std::int32_t>(std::lround(s * 8388608.0));
      v = std::clamp(v, -8388608, 8388607);
      for (int i = 0; i < 3; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xFF));
      break;
    }
    case SampleFormat::float32: {
      auto f = static_cast<float>(s);
      put32(out, std::bit_cast<std::uint32_t>(f));
      break;
    }
    }
  }
  return out;
}

void write_audio(const std::filesystem::path &path, const AudioBuffer &audio, SampleFormat fmt) {
  write_file(path, encode_wav(audio, fmt));
}

std::string read_file(const std::filesystem::path &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return std::move(ss).str();
}

void write_file(const std::filesystem::path &path, std::string_view data) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  out.write(data.data(), static_cast<std::streamsize>(data.size()));
  if (!out) throw Error("write failed for " + path.string());
}

} // namespace prosody
