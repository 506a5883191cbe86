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

#include <filesystem>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "prosody/common.hpp"

namespace prosody {

struct AudioBuffer {
  std::vector<double> samples; // in [-1, 1]
  int sample_rate = 0;

  double duration() const {
    return sample_rate > 0 ? static_cast<double>(samples.size()) / sample_rate : 0.0;
  }
};

/// Throws if the buffer breaks the AudioBuffer invariants.
void validate(const AudioBuffer &audio);

enum class SampleFormat { pcm16, pcm24, float32 };

/// Reads a RIFF/WAVE file (PCM 16/24 bit or IEEE float 32). Multi-channel
/// input is downmixed by averaging channels.
AudioBuffer read_audio(const std::filesystem::path &path);
AudioBuffer decode_wav(std::string_view bytes);

/// Mono writer used by the fixture generator and the HTTP audio endpoint.
std::string encode_wav(const AudioBuffer &audio, SampleFormat fmt = SampleFormat::pcm16);
void write_audio(const std::filesystem::path &path, const AudioBuffer &audio,
                 SampleFormat fmt = SampleFormat::pcm16);

inline constexpr std::string_view kSilence = "sil";

/// True for the labels aligners use to mark pauses ("", "sil", "sp", "<eps>").
bool is_silence_label(std::string_view label);

struct Interval {
  std::string label;
  double start = 0.0;
  double end = 0.0;

  double midpoint() const { return 0.5 * (start + end); }
  double length() const { return end - start; }
  bool is_silence() const { return label == kSilence; }
};

struct WordInterval : Interval {
  // Half-open range into Alignment::phones.
  std::size_t phone_begin = 0;
  std::size_t phone_end = 0;
};

struct Alignment {
  std::string utterance_id;
  std::vector<WordInterval> words;
  std::vector<Interval> phones;

  double end_time() const;
  /// Non-silence words in order.
  std::vector<const WordInterval *> spoken_words() const;
  /// Explicit silence intervals plus any gaps between consecutive words.
  std::vector<Interval> pauses() const;
};

enum class AlignmentFormat { textgrid, tsv };

/// For `tsv`, `path` names the words file (`<id>.words.tsv`); the phones file
/// is the sibling `<id>.phones.tsv`.
Alignment parse_alignment(const std::filesystem::path &path, AlignmentFormat format);
Alignment parse_textgrid(std::string_view text, std::string utterance_id = {});
Alignment parse_tsv(std::string_view words_text, std::string_view phones_text,
                    std::string utterance_id = {});
/// Builds an Alignment from raw tiers: normalizes silence labels, checks tier
/// ordering, and links words to phones by phone-midpoint containment.
Alignment build_alignment(std::string utterance_id, std::vector<Interval> words,
                          std::vector<Interval> phones);

std::filesystem::path phones_path_for(const std::filesystem::path &words_tsv);
std::string format_tsv(std::span<const Interval> tier);

using Pronunciation = std::vector<std::string>;

class Lexicon {
public:
  void add(std::string_view word, Pronunciation pron);
  /// Primary (first listed) pronunciation, or nullptr when out of vocabulary.
  const Pronunciation *lookup(std::string_view word) const;
  const std::vector<Pronunciation> *alternatives(std::string_view word) const;
  std::size_t size() const { return entries_.size(); }
  const std::map<std::string, std::vector<Pronunciation>> &entries() const { return entries_; }

private:
  std::map<std::string, std::vector<Pronunciation>> entries_;
};

Lexicon load_lexicon(const std::filesystem::path &path);
Lexicon parse_lexicon(std::string_view text);

std::string read_file(const std::filesystem::path &path);
void write_file(const std::filesystem::path &path, std::string_view data);

} // namespace prosody
