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
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "prosody/ingest.hpp"
#include "prosody/labeler.hpp"

namespace prosody {

struct TranscriptToken {
  enum class Kind { word, punct } kind = Kind::word;
  std::string text;

  friend bool operator==(const TranscriptToken &, const TranscriptToken &) = default;
};

struct Transcript {
  std::string utterance_id;
  std::vector<TranscriptToken> tokens;
  /// Characters removed during tokenization (punctuation outside , . ! ?).
  std::string dropped;

  std::vector<std::string> words() const;
};

/// Splits raw text into words and the marks , . ! ? (repeated marks collapse
/// to the first; marks before the first word are dropped).
Transcript tokenize_transcript(std::string_view text, std::string utterance_id = {});

enum class OovPolicy { graphemes, error };

std::vector<std::string> phonemize(std::string_view word, const Lexicon &lexicon,
                                   OovPolicy policy = OovPolicy::graphemes);

/// Lowercase, keeping only letters, digits and apostrophes.
std::string fold_word(std::string_view word);

std::string augment_transcript(const Transcript &transcript,
                               const std::vector<WordAnnotation> &annotations,
                               const Lexicon &lexicon, OovPolicy policy = OovPolicy::graphemes);

struct AugmentedWord {
  std::vector<std::string> phones;
  std::optional<char> punct;
  int p_class = 0;
  int b_class = 0;

  friend bool operator==(const AugmentedWord &, const AugmentedWord &) = default;
};

std::vector<AugmentedWord> parse_augmented(std::string_view s);

/// Manual label overrides: utterance id -> (p, b) per word.
using LabelOverrides = std::map<std::string, std::vector<std::pair<int, int>>>;

LabelOverrides parse_overrides(std::string_view jsonl);

/// Annotations carrying the transcript's words and the overriding classes.
std::vector<WordAnnotation> annotations_from_override(const Transcript &transcript,
                                                      const std::vector<std::pair<int, int>> &labels);

/// Transcript files: `id|text[|normalized]` (LJSpeech) or `id<TAB>text`.
std::vector<Transcript> parse_transcripts(std::string_view text);

} // namespace prosody
