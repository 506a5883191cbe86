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

// Acceptance suite: one PASS/FAIL line per top-level criterion. Exits
// non-zero when any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <map>
#include <random>
#include <sstream>

#include "prosody/augment.hpp"
#include "prosody/corpus.hpp"
#include "prosody/eval.hpp"
#include "prosody/fixtures.hpp"
#include "prosody/labeler.hpp"
#include "prosody/wavelet.hpp"
#include "support.hpp"

using namespace prosody;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string &what) {
    if (!ok) {
      pass = false;
      detail << "[failed: " << what << "] ";
    }
  }
};

bool close(double a, double b, double tol) { return std::abs(a - b) <= tol; }

// Designed-contrast checks on the synthetic corpus.
void fixture_labels(Outcome &o) {
  const auto utts = fixtures::generate();
  const auto &dir = testing::fixture_corpus();
  const auto index = load_corpus(dir);

  const auto t0 = std::chrono::steady_clock::now();
  const auto result = batch_annotate(index, Config{}, 1);
  const double elapsed =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  o.require(result.failures.empty(), "every fixture utterance annotates");

  std::map<std::string, std::vector<WordAnnotation>> ann;
  for (const auto &line : result.records) {
    auto rec = parse_annotation_record(nlohmann::json::parse(line));
    ann[rec.id] = std::move(rec.words);
  }

  std::size_t prom_pairs = 0, prom_ok = 0, bound_pairs = 0, bound_ok = 0, emph = 0, emph_top = 0;
  for (const auto &u : utts) {
    const auto &words = ann.at(u.id);
    o.require(words.size() == u.design.size(), u.id + " word count");
    if (words.size() != u.design.size()) continue;
    std::vector<double> emphasized, deaccented, pause, joint;
    for (std::size_t i = 0; i < words.size(); ++i) {
      const auto &d = u.design[i];
      if (d.role == fixtures::Role::emphasized) {
        emphasized.push_back(words[i].prominence);
        ++emph;
        emph_top += words[i].p_class == 2;
      }
      if (d.role == fixtures::Role::deaccented) deaccented.push_back(words[i].prominence);
      // The final word closes the utterance and is neither a pause nor a joint.
      if (i + 1 < words.size()) (d.pause_after ? pause : joint).push_back(words[i].boundary);
    }
    for (double e : emphasized)
      for (double d : deaccented) prom_pairs++, prom_ok += e > d;
    for (double p : pause)
      for (double j : joint) bound_pairs++, bound_ok += p > j;
  }
  const double prom_rate = static_cast<double>(prom_ok) / prom_pairs;
  const double bound_rate = static_cast<double>(bound_ok) / bound_pairs;
  const double emph_rate = static_cast<double>(emph_top) / emph;
  o.detail << "emphasized>deaccented " << prom_ok << "/" << prom_pairs << ", pause>joint "
           << bound_ok << "/" << bound_pairs << ", emphasized p=2 " << emph_top << "/" << emph
           << ", single-thread " << elapsed << " s ";
  o.require(prom_rate >= 0.9, "prominence pair rate >= 0.9");
  o.require(bound_rate >= 0.9, "boundary pair rate >= 0.9");
  o.require(emph_rate >= 0.8, "emphasized p_class 2 rate >= 0.8");
  o.require(elapsed < 60.0, "runtime < 60 s");
}

// Exhaustive minimum over all monotone (1,0)/(0,1)/(1,1) paths. Costs are
// accumulated in path order, matching the recurrence's summation order.
double brute_force_dtw(const std::vector<double> &a, const std::vector<double> &b) {
  double best = std::numeric_limits<double>::infinity();
  std::function<void(std::size_t, std::size_t, double)> walk = [&](std::size_t i, std::size_t j,
                                                                    double acc) {
    acc += std::abs(a[i] - b[j]);
    if (i + 1 == a.size() && j + 1 == b.size()) {
      best = std::min(best, acc);
      return;
    }
    if (i + 1 < a.size()) walk(i + 1, j, acc);
    if (j + 1 < b.size()) walk(i, j + 1, acc);
    if (i + 1 < a.size() && j + 1 < b.size()) walk(i + 1, j + 1, acc);
  };
  walk(0, 0, 0.0);
  return best;
}

void dtw_oracle(Outcome &o) {
  std::mt19937_64 gen(42);
  std::uniform_int_distribution<std::size_t> len(1, 8);
  std::uniform_real_distribution<double> val(-3.0, 3.0);
  std::size_t exact = 0;
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<double> a(len(gen)), b(len(gen));
    for (auto &v : a) v = val(gen);
    for (auto &v : b) v = val(gen);
    Matrix ma(a.size(), 1), mb(b.size(), 1);
    for (std::size_t i = 0; i < a.size(); ++i) ma(i, 0) = a[i];
    for (std::size_t i = 0; i < b.size(); ++i) mb(i, 0) = b[i];
    const double oracle = brute_force_dtw(a, b);
    exact += dtw_align(ma, mb, Exec::serial).cost == oracle &&
             dtw_align(ma, mb, Exec::parallel).cost == oracle;
  }
  o.detail << exact << "/200 pairs identical to enumeration ";
  o.require(exact == 200, "all pairs exact");
}

void closed_form(Outcome &o) {
  const std::vector<std::pair<double, double>> corr = {{1, 1}, {2, 3}, {3, 2}, {4, 4}};
  const auto c = series_metrics(corr);
  o.require(c.correlation && close(*c.correlation, 0.8, 1e-6), "pearson 0.8");

  const std::vector<std::pair<double, double>> rm = {{0, 3}, {0, 4}, {100, -100}};
  const auto r = series_metrics(rm, {true, true, false});
  o.require(close(r.rmse, std::sqrt(12.5), 1e-6), "rmse sqrt(12.5)");

  ProsodicSignal s;
  s.values = {1, 2, 3};
  const auto z = znorm(s).values;
  const double e = std::sqrt(1.5);
  o.require(close(z[0], -e, 1e-6) && close(z[1], 0, 1e-6) && close(z[2], e, 1e-6), "znorm");

  const auto sig = significance_tests({{1, 2, 3}, {2, 3, 4}, {3, 4, 5}});
  o.require(close(sig.f, 3.0, 1e-6), "anova F 3.0");
  o.require(close(sig.p, 0.125, 1e-6), "anova p 0.125");
  o.require(close(bonferroni(0.01, 5), 0.05, 1e-6), "bonferroni 0.01 x 5");
  o.detail << "r=" << c.correlation.value_or(NAN) << " rmse=" << r.rmse << " F=" << sig.f
           << " p=" << sig.p << " ";
}

void cwt_localization(Outcome &o) {
  const ScaleBank bank = ScaleBank::geometric(0.08, 5.12, 2);
  for (double hz : {0.5, 1.0, 2.0, 4.0}) {
    ProsodicSignal s;
    s.values.resize(4000); // 20 s at 200 fps
    for (std::size_t i = 0; i < s.values.size(); ++i)
      s.values[i] = std::cos(2.0 * std::numbers::pi * hz * static_cast<double>(i) * 0.005);
    const auto sc = cwt(s, bank, Exec::parallel);
    std::size_t best = 0;
    double best_energy = -1.0;
    for (std::size_t k = 0; k < sc.n_scales(); ++k) {
      double acc = 0.0;
      for (std::size_t f = 1000; f < 3000; ++f) acc += sc.coefficients(k, f) * sc.coefficients(k, f);
      if (acc > best_energy) best_energy = acc, best = k;
    }
    const double octaves = std::abs(std::log2(bank.periods[best] * hz));
    o.detail << hz << "Hz->" << bank.periods[best] << "s ";
    o.require(octaves <= 0.5 + 1e-12, "peak within half an octave at " + std::to_string(hz) + " Hz");
  }

  ProsodicSignal zero;
  zero.values.assign(600, 0.0);
  const auto zc = cwt(zero, bank);
  bool all_zero = true;
  for (std::size_t k = 0; k < zc.n_scales(); ++k)
    for (double v : zc.coefficients.row(k)) all_zero &= v == 0.0;
  o.require(all_zero, "zero signal gives zero scalogram");

  std::mt19937_64 gen(3);
  std::normal_distribution<double> nd;
  double worst = 0.0;
  for (int trial = 0; trial < 5; ++trial) {
    ProsodicSignal x, y, mix;
    x.values.resize(700);
    y.values.resize(700);
    mix.values.resize(700);
    const double alpha = nd(gen), beta = nd(gen);
    for (std::size_t i = 0; i < 700; ++i) {
      x.values[i] = nd(gen);
      y.values[i] = nd(gen);
      mix.values[i] = alpha * x.values[i] + beta * y.values[i];
    }
    const auto cx = cwt(x, bank), cy = cwt(y, bank), cm = cwt(mix, bank);
    for (std::size_t k = 0; k < cm.n_scales(); ++k)
      for (std::size_t f = 0; f < cm.n_frames(); ++f)
        worst = std::max(worst, std::abs(cm.coefficients(k, f) - alpha * cx.coefficients(k, f) -
                                         beta * cy.coefficients(k, f)));
  }
  o.detail << "linearity max error " << worst << " ";
  o.require(worst <= 1e-9, "linearity within 1e-9");
}

void determinism(Outcome &o) {
  const auto index = load_corpus(testing::fixture_corpus());
  const Config cfg;
  const auto one = batch_annotate(index, cfg, 1);
  const auto eight = batch_annotate(index, cfg, 8);
  o.require(one.records == eight.records, "parallelism 1 vs 8 byte-identical");
  o.require(one.summary.dump() == eight.summary.dump(), "summaries identical");

  const auto &entry = index.entries.front();
  const auto audio = read_audio(entry.audio);
  const auto align = load_entry_alignment(entry);
  o.require(annotate_utterance(audio, align, cfg) == annotate_utterance(audio, align, cfg),
            "annotate_utterance repeatable");
  o.detail << one.records.size() << " records compared ";
}

void self_evaluation(Outcome &o) {
  const auto index = load_corpus(testing::fixture_corpus());
  const auto report = batch_evaluate(index, {{"self", index}}, Config{}, {});
  std::size_t checked = 0;
  for (const auto &u : report["per_utterance"]) {
    o.require(!u.contains("error"), "no per-utterance errors");
    o.require(u["dtw_cost"].get<double>() == 0.0, "zero dtw cost");
    for (const auto &m : metric_names()) {
      const auto &v = u[m];
      const bool ok = v.is_object() && v["rmse"].get<double>() == 0.0 && !v["correlation"].is_null() &&
                      close(v["correlation"].get<double>(), 1.0, 1e-9);
      o.require(ok, u["id"].get<std::string>() + " " + m);
      checked += ok;
    }
  }
  o.detail << checked << " metric values at rmse 0 / r 1 ";
  o.require(checked == 4 * index.entries.size(), "every utterance x metric");
}

void augmentation(Outcome &o) {
  const Lexicon lex = load_lexicon(testing::data_path("mini.dict"));
  const auto t = tokenize_transcript("I insist, that");
  std::vector<WordAnnotation> labels(3);
  const int p[] = {1, 2, 0}, b[] = {0, 2, 0};
  for (int i = 0; i < 3; ++i)
    labels[i].word = t.words()[i], labels[i].p_class = p[i], labels[i].b_class = b[i];
  const std::string got = augment_transcript(t, labels, lex);
  const std::string want = "<p1> ay1 <b0> <p2> ih2 n s ih1 s t , <b2> <p0> dh ae1 t <b0>";
  o.require(got == want, "fragment verbatim (got \"" + got + "\")");

  // Random well-formed inputs over a synthetic lexicon.
  Lexicon rl;
  std::mt19937_64 gen(11);
  const std::vector<std::string> inventory = {"aa1", "ae0", "b", "d", "iy2", "k", "m", "s", "t", "uw1"};
  for (int w = 0; w < 30; ++w) {
    Pronunciation pr(1 + gen() % 5);
    for (auto &ph : pr) ph = inventory[gen() % inventory.size()];
    rl.add("w" + std::to_string(w), pr);
  }
  const std::string marks = ",.!?";
  std::size_t ok = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t n = 1 + gen() % 10;
    std::string text;
    std::vector<AugmentedWord> expected(n);
    std::vector<WordAnnotation> ann(n);
    for (std::size_t i = 0; i < n; ++i) {
      const std::string w = "w" + std::to_string(gen() % 30);
      text += (i ? " " : "") + w;
      ann[i].word = w;
      expected[i].phones = *rl.lookup(w);
      ann[i].p_class = expected[i].p_class = static_cast<int>(gen() % 3);
      ann[i].b_class = expected[i].b_class = static_cast<int>(gen() % 3);
      if (gen() % 3 == 0) {
        expected[i].punct = marks[gen() % marks.size()];
        text += *expected[i].punct;
      }
    }
    ok += parse_augmented(augment_transcript(tokenize_transcript(text), ann, rl)) == expected;
  }
  o.detail << "round trips " << ok << "/1000 ";
  o.require(ok == 1000, "round trip identity");
}

void label_report_check(Outcome &o) {
  const std::vector<int> oracle = {0, 0, 1, 1, 2, 2}, predicted = {0, 0, 1, 0, 2, 1};
  const auto blk = label_block(oracle, predicted);
  o.require(close(blk.accuracy, 4.0 / 6.0, 1e-12), "accuracy 4/6");
  const double want[3][3] = {{2.0 / 3.0, 1.0, 0.8}, {0.5, 0.5, 0.5}, {1.0, 0.5, 2.0 / 3.0}};
  for (int c = 0; c < 3; ++c) {
    const auto &s = blk.classes[c];
    o.require(close(s.precision, want[c][0], 1e-12) && close(s.recall, want[c][1], 1e-12) &&
                  close(s.f, want[c][2], 1e-12),
              "class " + std::to_string(c) + " P/R/F");
  }

  const auto index = load_corpus(testing::fixture_corpus());
  EvaluateOptions opts;
  opts.relabel = true;
  const auto report = batch_evaluate(index, {{"self", index}}, Config{}, opts);
  const auto &labels = report["labels"]["self"];
  const double pa = labels["prominence"]["accuracy"].get<double>();
  const double ba = labels["boundary"]["accuracy"].get<double>();
  o.detail << "relabel accuracy p=" << pa << " b=" << ba << " ";
  o.require(pa == 1.0 && ba == 1.0, "relabel accuracy 1.0");
}

} // namespace

int main() {
  const std::vector<std::pair<const char *, void (*)(Outcome &)>> criteria = {
      {"fixture-e2e-labels", fixture_labels},
      {"dtw-oracle-equivalence", dtw_oracle},
      {"closed-form-numerics", closed_form},
      {"cwt-scale-localization", cwt_localization},
      {"determinism", determinism},
      {"self-evaluation-identity", self_evaluation},
      {"augmentation-fidelity", augmentation},
      {"label-report", label_report_check},
  };
  int failed = 0;
  for (const auto &[name, fn] : criteria) {
    Outcome o;
    try {
      fn(o);
    } catch (const std::exception &e) {
      o.pass = false;
      o.detail << "[exception: " << e.what() << "]";
    }
    std::printf("%s %s: %s\n", o.pass ? "PASS" : "FAIL", name, o.detail.str().c_str());
    failed += !o.pass;
  }
  std::filesystem::remove_all(testing::fixture_corpus());
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed,
              criteria.size());
  return failed == 0 ? 0 : 1;
}
