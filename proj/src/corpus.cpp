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
#include <array>
#include <map>
#include <set>
#include <sstream>

#include "prosody/augment.hpp"
#include "prosody/corpus.hpp"

namespace fs = std::filesystem;

namespace prosody {

const CorpusEntry *CorpusIndex::find(const std::string &id) const {
  for (const auto &e : entries)
    if (e.id == id) return &e;
  return nullptr;
}

namespace {

void check_unique(const CorpusIndex &index) {
  std::set<std::string> seen;
  for (const auto &e : index.entries)
    if (!seen.insert(e.id).second) throw Error("duplicate utterance id '" + e.id + "'");
}

void require_exists(const fs::path &p) {
  if (!fs::exists(p)) throw Error("missing file " + p.string());
}

AlignmentFormat format_of(const fs::path &p) {
  std::string ext = p.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(), ::tolower);
  return ext == ".textgrid" ? AlignmentFormat::textgrid : AlignmentFormat::tsv;
}

} // namespace

CorpusIndex load_corpus_dir(const fs::path &dir) {
  const fs::path wavs = dir / "wavs", align = dir / "align";
  if (!fs::is_directory(wavs)) throw Error("corpus has no wavs/ directory: " + dir.string());

  std::map<std::string, std::string> texts;
  for (const char *name : {"metadata.csv", "metadata.tsv", "metadata.txt"}) {
    if (fs::exists(dir / name)) {
      for (auto &t : parse_transcripts(read_file(dir / name))) {
        std::string joined;
        for (const auto &tok : t.tokens) {
          if (!joined.empty() && tok.kind == TranscriptToken::Kind::word) joined += ' ';
          joined += tok.text;
        }
        texts[t.utterance_id] = joined;
      }
      break;
    }
  }

  CorpusIndex index;
  std::vector<fs::path> files;
  for (const auto &f : fs::directory_iterator(wavs))
    if (f.is_regular_file() && f.path().extension() == ".wav") files.push_back(f.path());
  std::sort(files.begin(), files.end());
  for (const auto &wav : files) {
    CorpusEntry e;
    e.id = wav.stem().string();
    e.audio = wav;
    if (fs::exists(align / (e.id + ".TextGrid"))) {
      e.alignment = align / (e.id + ".TextGrid");
      e.format = AlignmentFormat::textgrid;
    } else {
      e.alignment = align / (e.id + ".words.tsv");
      e.format = AlignmentFormat::tsv;
      require_exists(e.alignment);
      require_exists(phones_path_for(e.alignment));
    }
    if (auto it = texts.find(e.id); it != texts.end()) e.transcript = it->second;
    index.entries.push_back(std::move(e));
  }
  check_unique(index);
  return index;
}

CorpusIndex load_manifest(const fs::path &path) {
  std::istringstream in(read_file(path));
  const fs::path base = path.parent_path();
  auto resolve = [&](const std::string &p) { return fs::path(p).is_absolute() ? fs::path(p) : base / p; };
  CorpusIndex index;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    std::vector<std::string> f;
    std::stringstream ss(line);
    for (std::string field; std::getline(ss, field, '\t');) f.push_back(field);
    if (f.size() < 3)
      throw Error(path.string() + ":" + std::to_string(lineno) + ": expected id<TAB>audio<TAB>alignment");
    CorpusEntry e;
    e.id = f[0];
    e.audio = resolve(f[1]);
    e.alignment = resolve(f[2]);
    e.format = format_of(e.alignment);
    if (f.size() > 3) e.transcript = f[3];
    require_exists(e.audio);
    require_exists(e.alignment);
    if (e.format == AlignmentFormat::tsv) require_exists(phones_path_for(e.alignment));
    index.entries.push_back(std::move(e));
  }
  check_unique(index);
  return index;
}

CorpusIndex load_corpus(const fs::path &path) {
  return fs::is_directory(path) ? load_corpus_dir(path) : load_manifest(path);
}

Alignment load_entry_alignment(const CorpusEntry &entry) {
  Alignment a = parse_alignment(entry.alignment, entry.format);
  a.utterance_id = entry.id;
  return a;
}

AnnotateResult batch_annotate(const CorpusIndex &index, const Config &config, int parallelism) {
  if (index.entries.empty()) throw Error("no utterances");
  config.validate();
  const std::string hash = config.hash();
  const auto n = static_cast<std::ptrdiff_t>(index.entries.size());

  struct Slot {
    std::string record;
    std::vector<WordAnnotation> words;
    std::string error;
  };
  std::vector<Slot> slots(index.entries.size());

  auto work = [&](std::ptrdiff_t i) {
    const auto &e = index.entries[static_cast<std::size_t>(i)];
    try {
      const AudioBuffer audio = read_audio(e.audio);
      const Alignment align = load_entry_alignment(e);
      auto words = annotate_utterance(audio, align, config, Exec::serial);
      slots[i].record = annotation_record(e.id, words, hash).dump();
      slots[i].words = std::move(words);
    } catch (const std::exception &ex) {
      slots[i].error = ex.what();
    }
  };

  const int threads = std::max(1, parallelism);
#pragma omp parallel for schedule(dynamic) num_threads(threads)
  for (std::ptrdiff_t i = 0; i < n; ++i) work(i);

  AnnotateResult result;
  std::array<std::size_t, 3> p_counts{}, b_counts{};
  nlohmann::json failed = nlohmann::json::array();
  for (std::size_t i = 0; i < slots.size(); ++i) {
    if (!slots[i].error.empty()) {
      result.failures.push_back({index.entries[i].id, slots[i].error});
      failed.push_back({{"id", index.entries[i].id}, {"error", slots[i].error}});
      continue;
    }
    result.records.push_back(std::move(slots[i].record));
    for (const auto &w : slots[i].words) {
      ++p_counts[w.p_class];
      ++b_counts[w.b_class];
    }
  }
  result.summary = {{"utterances", index.entries.size()},
                    {"annotated", result.records.size()},
                    {"failed", failed},
                    {"p_counts", p_counts},
                    {"b_counts", b_counts},
                    {"config_hash", hash}};
  return result;
}

void write_jsonl(const fs::path &path, const std::vector<std::string> &records) {
  std::string out;
  for (const auto &r : records) {
    out += r;
    out += '\n';
  }
  write_file(path, out);
}

UtteranceMetrics evaluate_pair(const AudioBuffer &ref_audio, const Alignment &ref_align,
                               const AudioBuffer &syn_audio, const Alignment &syn_align,
                               const Config &config, Exec exec) {
  UtteranceMetrics m;
  const FeatureMatrix ref_feat = mel_features(ref_audio, exec);
  const FeatureMatrix syn_feat = mel_features(syn_audio, exec);
  const DtwResult dtw = dtw_align(ref_feat, syn_feat, exec);
  m.dtw_cost = dtw.cost;
  m.ref_frames = ref_feat.frames();
  m.syn_frames = syn_feat.frames();

  const EvalTracks ref = eval_tracks(ref_audio, config.signals, ref_feat.frames(), exec);
  const EvalTracks syn = eval_tracks(syn_audio, config.signals, syn_feat.frames(), exec);
  const auto idx = warp_indices(dtw.path, ref_feat.frames(), syn_feat.frames());
  std::vector<bool> both_voiced(idx.size());
  for (std::size_t i = 0; i < idx.size(); ++i) both_voiced[i] = ref.voiced[i] && syn.voiced[idx[i]];

  std::vector<std::string> errors;
  auto attempt = [&](const char *what, auto &&fn) {
    try {
      fn();
    } catch (const Error &e) {
      errors.push_back(std::string(what) + ": " + e.what());
    }
  };
  attempt("f0", [&] {
    m.f0 = series_metrics(warp_series(dtw.path, ref.f0_st, syn.f0_st), both_voiced);
  });
  attempt("energy", [&] {
    m.energy = series_metrics(warp_series(dtw.path, ref.energy_db, syn.energy_db), both_voiced);
  });
  attempt("duration", [&] {
    const DurationMetrics d = duration_metrics(ref_align, syn_align);
    m.phone_duration = d.phone;
    m.word_duration = d.word;
  });
  for (const auto &e : errors) m.error += (m.error.empty() ? "" : "; ") + e;
  return m;
}

nlohmann::json to_json(const UtteranceMetrics &m) {
  auto opt = [](const std::optional<SeriesMetrics> &s) {
    return s ? to_json(*s) : nlohmann::json(nullptr);
  };
  nlohmann::json j = {{"system", m.system},
                      {"id", m.id},
                      {"dtw_cost", m.dtw_cost},
                      {"ref_frames", m.ref_frames},
                      {"syn_frames", m.syn_frames},
                      {"f0", opt(m.f0)},
                      {"energy", opt(m.energy)},
                      {"phone_duration", opt(m.phone_duration)},
                      {"word_duration", opt(m.word_duration)}};
  if (!m.error.empty()) j["error"] = m.error;
  return j;
}

namespace {

const std::optional<SeriesMetrics> &metric_of(const UtteranceMetrics &m, const std::string &name) {
  if (name == "f0") return m.f0;
  if (name == "energy") return m.energy;
  if (name == "phone_duration") return m.phone_duration;
  return m.word_duration;
}

struct SystemRun {
  std::vector<UtteranceMetrics> metrics;
  std::vector<UtteranceLabels> labels;
  std::vector<std::string> ref_only;
  std::vector<std::string> syn_only;
};

SystemRun run_system(const CorpusIndex &ref, const SystemCorpus &sys, const Config &config,
                     const EvaluateOptions &opts) {
  SystemRun run;
  std::vector<std::pair<const CorpusEntry *, const CorpusEntry *>> jobs;
  for (const auto &e : ref.entries) {
    if (const auto *s = sys.index.find(e.id))
      jobs.emplace_back(&e, s);
    else
      run.ref_only.push_back(e.id);
  }
  for (const auto &e : sys.index.entries)
    if (!ref.find(e.id)) run.syn_only.push_back(e.id);
  if (jobs.empty()) throw Error("no common utterances between reference and '" + sys.name + "'");

  run.metrics.resize(jobs.size());
  std::vector<std::optional<UtteranceLabels>> labels(jobs.size());
  const auto n = static_cast<std::ptrdiff_t>(jobs.size());
#pragma omp parallel for schedule(dynamic) num_threads(std::max(1, opts.parallelism))
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    auto &m = run.metrics[i];
    m.system = sys.name;
    m.id = jobs[i].first->id;
    try {
      const AudioBuffer ra = read_audio(jobs[i].first->audio);
      const AudioBuffer sa = read_audio(jobs[i].second->audio);
      const Alignment rl = load_entry_alignment(*jobs[i].first);
      const Alignment sl = load_entry_alignment(*jobs[i].second);
      m = evaluate_pair(ra, rl, sa, sl, config, Exec::serial);
      m.system = sys.name;
      m.id = jobs[i].first->id;
      if (opts.relabel)
        labels[i] = UtteranceLabels{m.id, annotate_utterance(ra, rl, config, Exec::serial),
                                    annotate_utterance(sa, sl, config, Exec::serial)};
    } catch (const std::exception &e) {
      m.error = e.what();
    }
  }
  for (auto &l : labels)
    if (l) run.labels.push_back(std::move(*l));
  return run;
}

} // namespace

nlohmann::json batch_evaluate(const CorpusIndex &ref, const std::vector<SystemCorpus> &systems,
                              const Config &config, const EvaluateOptions &opts) {
  if (systems.empty()) throw Error("no systems to evaluate");
  config.validate();

  std::vector<SystemRun> runs;
  for (const auto &sys : systems) runs.push_back(run_system(ref, sys, config, opts));

  nlohmann::json report;
  report["config_hash"] = config.hash();
  report["label_source"] = opts.label_source;
  std::vector<std::string> names;
  for (const auto &s : systems) names.push_back(s.name);
  report["systems"] = names;

  nlohmann::json per = nlohmann::json::array(), aggregate = nlohmann::json::object(),
                 missing = nlohmann::json::object();
  for (std::size_t s = 0; s < runs.size(); ++s) {
    for (const auto &m : runs[s].metrics) per.push_back(to_json(m));
    nlohmann::json agg = nlohmann::json::object();
    for (const auto &metric : metric_names()) {
      double rmse = 0.0, corr = 0.0;
      std::size_t nr = 0, nc = 0;
      for (const auto &m : runs[s].metrics) {
        const auto &v = metric_of(m, metric);
        if (!v) continue;
        rmse += v->rmse;
        ++nr;
        if (v->correlation) {
          corr += *v->correlation;
          ++nc;
        }
      }
      agg[metric] = {{"mean_rmse", nr ? nlohmann::json(rmse / nr) : nlohmann::json(nullptr)},
                     {"mean_corr", nc ? nlohmann::json(corr / nc) : nlohmann::json(nullptr)},
                     {"n", nr}};
    }
    aggregate[names[s]] = agg;
    missing[names[s]] = {{"ref_only", runs[s].ref_only}, {"syn_only", runs[s].syn_only}};
  }
  report["per_utterance"] = per;
  report["aggregate"] = aggregate;
  report["missing"] = missing;

  nlohmann::json sig = nlohmann::json::object();
  if (runs.size() >= 2) {
    for (const auto &metric : metric_names()) {
      for (const char *stat : {"rmse", "corr"}) {
        std::vector<std::vector<double>> groups;
        for (const auto &run : runs) {
          std::vector<double> g;
          for (const auto &m : run.metrics) {
            const auto &v = metric_of(m, metric);
            if (!v) continue;
            if (std::string(stat) == "rmse")
              g.push_back(v->rmse);
            else if (v->correlation)
              g.push_back(*v->correlation);
          }
          groups.push_back(std::move(g));
        }
        const std::string key = metric + "_" + stat;
        try {
          sig[key] = to_json(significance_tests(groups), names);
        } catch (const Error &e) {
          sig[key] = {{"error", e.what()}};
        }
      }
    }
  }
  report["significance"] = sig;

  if (opts.relabel) {
    nlohmann::json labels = nlohmann::json::object();
    for (std::size_t s = 0; s < runs.size(); ++s) {
      try {
        labels[names[s]] = to_json(label_report(runs[s].labels));
      } catch (const Error &e) {
        labels[names[s]] = {{"error", e.what()}};
      }
    }
    report["labels"] = labels;
  } else {
    report["labels"] = nullptr;
  }
  return report;
}

} // namespace prosody
