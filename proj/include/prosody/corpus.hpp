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
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "prosody/config.hpp"
#include "prosody/eval.hpp"
#include "prosody/labeler.hpp"

namespace prosody {

struct CorpusEntry {
  std::string id;
  std::filesystem::path audio;
  std::filesystem::path alignment;
  AlignmentFormat format = AlignmentFormat::tsv;
  std::optional<std::string> transcript;
};

struct CorpusIndex {
  std::vector<CorpusEntry> entries;

  const CorpusEntry *find(const std::string &id) const;
};

/// Directory convention: `wavs/<id>.wav`, `align/<id>.TextGrid` or
/// `align/<id>.words.tsv` + `.phones.tsv`, optional `metadata.csv`
/// (`id|text`) or `metadata.tsv`.
CorpusIndex load_corpus_dir(const std::filesystem::path &dir);

/// Manifest lines: `id<TAB>audio<TAB>alignment[<TAB>text]`; relative paths
/// resolve against the manifest's directory.
CorpusIndex load_manifest(const std::filesystem::path &path);

/// A directory is read by convention, anything else as a manifest.
CorpusIndex load_corpus(const std::filesystem::path &path);

Alignment load_entry_alignment(const CorpusEntry &entry);

struct Failure {
  std::string id;
  std::string error;
};

struct AnnotateResult {
  std::vector<std::string> records; // JSONL lines in index order, successes only
  std::vector<Failure> failures;
  nlohmann::json summary;
};

AnnotateResult batch_annotate(const CorpusIndex &index, const Config &config, int parallelism);

/// Writes records as JSONL (one per line, trailing newline).
void write_jsonl(const std::filesystem::path &path, const std::vector<std::string> &records);

struct UtteranceMetrics {
  std::string system;
  std::string id;
  double dtw_cost = 0.0;
  std::size_t ref_frames = 0;
  std::size_t syn_frames = 0;
  std::optional<SeriesMetrics> f0;
  std::optional<SeriesMetrics> energy;
  std::optional<SeriesMetrics> phone_duration;
  std::optional<SeriesMetrics> word_duration;
  std::string error; // non-empty when a stage failed
};

/// Reference vs one synthetic rendition of the same text.
UtteranceMetrics evaluate_pair(const AudioBuffer &ref_audio, const Alignment &ref_align,
                               const AudioBuffer &syn_audio, const Alignment &syn_align,
                               const Config &config, Exec exec = Exec::parallel);

nlohmann::json to_json(const UtteranceMetrics &m);

struct EvaluateOptions {
  int parallelism = 1;
  bool relabel = false;             // annotate both sides and compare labels
  std::string label_source = "oracle";
};

struct SystemCorpus {
  std::string name;
  CorpusIndex index;
};

/// Full evaluation report; throws when no system shares an id with the
/// reference.
nlohmann::json batch_evaluate(const CorpusIndex &ref, const std::vector<SystemCorpus> &systems,
                              const Config &config, const EvaluateOptions &opts = {});

inline const std::vector<std::string> &metric_names() {
  static const std::vector<std::string> names = {"f0", "energy", "phone_duration",
                                                 "word_duration"};
  return names;
}

} // namespace prosody
