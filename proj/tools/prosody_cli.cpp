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

// prosody: command-line front end for corpus labeling, input augmentation
// and objective evaluation.
//
// Exit status: 0 on full success, 1 when some utterances failed, 2 on an
// invalid invocation or configuration.

#include <iostream>
#include <map>

#include <CLI11.hpp>

#include "prosody/augment.hpp"
#include "prosody/config.hpp"
#include "prosody/corpus.hpp"
#include "prosody/eval.hpp"
#include "prosody/fixtures.hpp"
#include "prosody/server.hpp"

using namespace prosody;

namespace {

constexpr int kOk = 0;
constexpr int kPartial = 1;
constexpr int kInvalid = 2;

struct InvalidInvocation : Error {
  using Error::Error;
};

// Config file plus per-key flag overrides, shared by several subcommands.
struct ConfigFlags {
  std::string file;
  std::map<std::string, std::string> overrides;

  void attach(CLI::App *cmd) {
    cmd->add_option("--config", file, "Configuration file (sectioned key = value)");
    for (const auto &key : config_keys())
      cmd->add_option("--" + key, overrides[key], "Override " + key);
  }

  Config resolve() const {
    try {
      Config cfg = file.empty() ? Config{} : load_config(file);
      for (const auto &[key, value] : overrides)
        if (!value.empty()) set_config_value(cfg, key, value);
      cfg.validate();
      return cfg;
    } catch (const Error &e) {
      throw InvalidInvocation(e.what());
    }
  }
};

void emit(const std::string &path, const std::string &content) {
  if (path.empty() || path == "-")
    std::cout << content;
  else
    write_file(path, content);
}

int run_annotate(const std::string &corpus, const ConfigFlags &flags, int jobs,
                 const std::string &out, const std::string &summary_path) {
  const Config cfg = flags.resolve();
  const CorpusIndex index = load_corpus(corpus);
  const AnnotateResult r = batch_annotate(index, cfg, jobs);
  std::string jsonl;
  for (const auto &rec : r.records) jsonl += rec + "\n";
  emit(out, jsonl);
  const std::string summary = r.summary.dump(2) + "\n";
  if (summary_path.empty())
    std::cerr << summary;
  else
    write_file(summary_path, summary);
  for (const auto &f : r.failures) std::cerr << "failed: " << f.id << ": " << f.error << "\n";
  return r.failures.empty() ? kOk : kPartial;
}

int run_augment(const std::string &transcripts_path, const std::string &lexicon_path,
                const std::string &annotations_path, const std::string &override_path,
                const std::string &oov, const std::string &out) {
  if (annotations_path.empty() && override_path.empty())
    throw InvalidInvocation("augment needs --annotations and/or --override-labels");
  const OovPolicy policy = oov == "error" ? OovPolicy::error : OovPolicy::graphemes;
  const Lexicon lexicon = load_lexicon(lexicon_path);
  const auto transcripts = parse_transcripts(read_file(transcripts_path));

  std::map<std::string, std::vector<WordAnnotation>> annotations;
  if (!annotations_path.empty())
    for (auto &rec : load_annotations(annotations_path)) annotations[rec.id] = std::move(rec.words);
  LabelOverrides overrides;
  if (!override_path.empty()) overrides = parse_overrides(read_file(override_path));

  std::string result;
  int failures = 0;
  for (const auto &t : transcripts) {
    try {
      if (!t.dropped.empty())
        std::cerr << t.utterance_id << ": dropped punctuation '" << t.dropped << "'\n";
      std::vector<WordAnnotation> words;
      if (auto o = overrides.find(t.utterance_id); o != overrides.end())
        words = annotations_from_override(t, o->second);
      else if (auto a = annotations.find(t.utterance_id); a != annotations.end())
        words = a->second;
      else
        throw Error("no annotation or override");
      result += t.utterance_id + "\t" + augment_transcript(t, words, lexicon, policy) + "\n";
    } catch (const Error &e) {
      std::cerr << "failed: " << t.utterance_id << ": " << e.what() << "\n";
      ++failures;
    }
  }
  emit(out, result);
  return failures == 0 ? kOk : kPartial;
}

int run_evaluate(const std::string &ref, const std::vector<std::string> &syn_specs,
                 const ConfigFlags &flags, int jobs, bool relabel, const std::string &label_source,
                 const std::string &out) {
  const Config cfg = flags.resolve();
  std::vector<SystemCorpus> systems;
  for (const auto &spec : syn_specs) {
    auto eq = spec.find('=');
    SystemCorpus s;
    if (eq == std::string::npos) {
      s.name = std::filesystem::path(spec).filename().string();
      s.index = load_corpus(spec);
    } else {
      s.name = spec.substr(0, eq);
      s.index = load_corpus(spec.substr(eq + 1));
    }
    systems.push_back(std::move(s));
  }
  EvaluateOptions opts;
  opts.parallelism = jobs;
  opts.relabel = relabel;
  opts.label_source = label_source;
  const auto report = batch_evaluate(load_corpus(ref), systems, cfg, opts);
  emit(out, report.dump(2) + "\n");
  for (const auto &u : report["per_utterance"])
    if (u.contains("error")) return kPartial;
  return kOk;
}

int run_compare(const std::string &oracle_path, const std::string &predicted_path,
                const std::string &out) {
  const auto oracle = load_annotations(oracle_path);
  std::map<std::string, std::vector<WordAnnotation>> predicted;
  for (auto &rec : load_annotations(predicted_path)) predicted[rec.id] = std::move(rec.words);
  std::vector<UtteranceLabels> pairs;
  std::vector<std::string> missing;
  for (const auto &rec : oracle) {
    auto it = predicted.find(rec.id);
    if (it == predicted.end()) {
      missing.push_back(rec.id);
      continue;
    }
    pairs.push_back({rec.id, rec.words, it->second});
  }
  nlohmann::json j = to_json(label_report(pairs));
  j["missing"] = missing;
  emit(out, j.dump(2) + "\n");
  return missing.empty() ? kOk : kPartial;
}

int run_stats(const std::string &input, const std::string &out) {
  const auto j = nlohmann::json::parse(read_file(input));
  if (!j.is_object()) throw InvalidInvocation("stats input must map group name -> [values]");
  std::vector<std::string> names;
  std::vector<std::vector<double>> groups;
  for (const auto &[name, values] : j.items()) {
    names.push_back(name);
    groups.push_back(values.get<std::vector<double>>());
  }
  emit(out, to_json(significance_tests(groups), names).dump(2) + "\n");
  return kOk;
}

int run_serve(const std::string &corpus, const ConfigFlags &flags, const std::string &host,
              int port, const std::string &static_dir) {
  ApiServer server(load_corpus(corpus), flags.resolve(),
                   static_dir.empty() ? std::nullopt : std::optional(static_dir));
  const int bound = server.bind(host, port);
  if (bound < 0) throw Error("cannot bind " + host + ":" + std::to_string(port));
  std::cerr << "serving on http://" << host << ":" << bound << "\n";
  return server.serve() ? kOk : kPartial;
}

int run_fixtures(const std::string &out, std::size_t count, std::uint64_t seed) {
  fixtures::Options opts;
  opts.count = count;
  opts.seed = seed;
  fixtures::write_corpus(out, fixtures::generate(opts));
  std::cerr << "wrote " << count << " utterances to " << out << "\n";
  return kOk;
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"Prosodic prominence/boundary labeling and evaluation toolkit"};
  app.require_subcommand(1);

  ConfigFlags annotate_cfg, evaluate_cfg, serve_cfg;
  std::string corpus, out, summary, transcripts, lexicon, annotations, overrides, oov = "graphemes";
  std::string ref, label_source = "oracle", oracle, predicted, input, host = "127.0.0.1", static_dir;
  std::vector<std::string> syn;
  int jobs = 1, port = 8080;
  bool relabel = false;
  std::size_t count = 20;
  std::uint64_t seed = fixtures::Options{}.seed;

  auto *annotate = app.add_subcommand("annotate", "Label every utterance of a corpus (JSONL)");
  annotate->add_option("corpus", corpus, "Corpus directory or manifest")->required();
  annotate->add_option("-o,--output", out, "Output JSONL (default stdout)");
  annotate->add_option("-j,--jobs", jobs, "Worker count")->check(CLI::PositiveNumber);
  annotate->add_option("--summary", summary, "Write the run summary here instead of stderr");
  annotate_cfg.attach(annotate);

  auto *augment = app.add_subcommand("augment", "Phonemize transcripts and insert prosody tokens");
  augment->add_option("--transcripts", transcripts, "id|text or id<TAB>text lines")->required();
  augment->add_option("--lexicon", lexicon, "CMU-format pronunciation dictionary")->required();
  augment->add_option("--annotations", annotations, "Annotation JSONL from `annotate`");
  augment->add_option("--override-labels", overrides, "JSONL {id, labels: [[p, b], ...]}");
  augment->add_option("--oov", oov, "Out-of-lexicon policy")
      ->check(CLI::IsMember({"graphemes", "error"}));
  augment->add_option("-o,--output", out, "Output TSV (default stdout)");

  auto *evaluate = app.add_subcommand("evaluate", "Objective comparison of synthetic vs reference");
  evaluate->add_option("--ref", ref, "Reference corpus")->required();
  evaluate->add_option("--syn", syn, "Synthetic corpus, NAME=PATH (repeatable)")->required();
  evaluate->add_option("-j,--jobs", jobs, "Worker count")->check(CLI::PositiveNumber);
  evaluate->add_flag("--relabel", relabel, "Relabel both sides and report label agreement");
  evaluate->add_option("--label-source", label_source, "Label source recorded in the report");
  evaluate->add_option("-o,--output", out, "Report JSON (default stdout)");
  evaluate_cfg.attach(evaluate);

  auto *compare = app.add_subcommand("compare-labels", "Label agreement between two annotation files");
  compare->add_option("--oracle", oracle, "Reference annotation JSONL")->required();
  compare->add_option("--predicted", predicted, "Annotation JSONL to score")->required();
  compare->add_option("-o,--output", out, "Report JSON (default stdout)");

  auto *stats = app.add_subcommand("stats", "One-way ANOVA and Bonferroni pairwise tests");
  stats->add_option("--input", input, "JSON object: group name -> [values]")->required();
  stats->add_option("-o,--output", out, "Result JSON (default stdout)");

  auto *serve = app.add_subcommand("serve", "HTTP API for the tuning console");
  serve->add_option("corpus", corpus, "Corpus directory or manifest")->required();
  serve->add_option("--host", host, "Bind address");
  serve->add_option("--port", port, "Port (0 picks a free one)");
  serve->add_option("--static", static_dir, "Directory of UI assets to serve at /");
  serve_cfg.attach(serve);

  auto *fixtures_cmd = app.add_subcommand("fixtures", "Write the synthetic test corpus");
  fixtures_cmd->add_option("-o,--output", out, "Output directory")->required();
  fixtures_cmd->add_option("--count", count, "Number of utterances");
  fixtures_cmd->add_option("--seed", seed, "Generator seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kInvalid;
  }

  try {
    if (*annotate) return run_annotate(corpus, annotate_cfg, jobs, out, summary);
    if (*augment) return run_augment(transcripts, lexicon, annotations, overrides, oov, out);
    if (*evaluate) return run_evaluate(ref, syn, evaluate_cfg, jobs, relabel, label_source, out);
    if (*compare) return run_compare(oracle, predicted, out);
    if (*stats) return run_stats(input, out);
    if (*serve) return run_serve(corpus, serve_cfg, host, port, static_dir);
    if (*fixtures_cmd) return run_fixtures(out, count, seed);
  } catch (const InvalidInvocation &e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInvalid;
  } catch (const std::exception &e) {
    std::cerr << "error: " << e.what() << "\n";
    // Whole-run failures (empty corpus, disjoint ids) are treated as invalid input.
    return kInvalid;
  }
  return kInvalid;
}
