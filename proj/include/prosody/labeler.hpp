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

#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "prosody/config.hpp"
#include "prosody/ingest.hpp"
#include "prosody/wavelet.hpp"

namespace prosody {

struct WordAnnotation {
  std::string word;
  double start = 0.0;
  double end = 0.0;
  double prominence = 0.0;
  double boundary = 0.0;
  int p_class = 0;
  int b_class = 0;

  friend bool operator==(const WordAnnotation &, const WordAnnotation &) = default;
};

struct WordScores {
  double prominence = 0.0;
  double boundary = 0.0;
};

/// Per spoken word of `alignment`, in order. Ridge anchors score the word
/// containing them; valley anchors score the word whose end is nearest, or
/// the preceding word when the anchor falls inside a pause.
std::vector<WordScores> assign_word_scores(const std::vector<Line> &ridges,
                                           const std::vector<Line> &valleys,
                                           const Alignment &alignment, double frame_period);

/// 0 below t1, 1 in [t1, t2), 2 at or above t2.
int discretize(double value, Range thresholds);

/// Everything computed on the way to the labels; the HTTP API serves it.
struct AnnotationTrace {
  ProsodicSignal f0;       // semitones, gap-filled
  ProsodicSignal energy;   // dB, range-clipped
  ProsodicSignal duration; // seconds
  ProsodicSignal prominence_signal;
  ProsodicSignal boundary_signal;
  Scalogram prominence_scalogram; // rows standardized
  Scalogram boundary_scalogram;
  ScaleBand word_band;
  ScaleBand phrase_band;
  std::vector<Line> ridges;
  std::vector<Line> valleys;
  std::vector<WordAnnotation> words;
};

/// Scales every scalogram row to unit RMS so line amplitudes are comparable
/// across scales and utterances. All-zero rows stay zero.
void standardize_rows(Scalogram &s);

AnnotationTrace annotate_trace(const AudioBuffer &audio, const Alignment &alignment,
                               const Config &cfg, Exec exec = Exec::parallel);

std::vector<WordAnnotation> annotate_utterance(const AudioBuffer &audio,
                                               const Alignment &alignment, const Config &cfg,
                                               Exec exec = Exec::parallel);

/// Re-derives classes from the stored continuous values.
void apply_thresholds(std::vector<WordAnnotation> &words, const Thresholds &thr);

/// One annotation JSONL record; floats rounded to 4 decimals.
nlohmann::json annotation_record(const std::string &id, const std::vector<WordAnnotation> &words,
                                 const std::string &config_hash);
nlohmann::json word_json(const WordAnnotation &w);
WordAnnotation word_from_json(const nlohmann::json &j);

struct AnnotationRecord {
  std::string id;
  std::vector<WordAnnotation> words;
  std::string config_hash;
};

AnnotationRecord parse_annotation_record(const nlohmann::json &j);
std::vector<AnnotationRecord> load_annotations(const std::string &path);

double round4(double v);

} // namespace prosody
