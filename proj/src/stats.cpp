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
#include <limits>
#include <numeric>

#include <boost/math/distributions/fisher_f.hpp>
#include <boost/math/distributions/students_t.hpp>

#include "prosody/eval.hpp"

namespace prosody {

namespace {

double mean(const std::vector<double> &v) {
  return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

double sum_sq_dev(const std::vector<double> &v, double m) {
  double acc = 0.0;
  for (double x : v) acc += (x - m) * (x - m);
  return acc;
}

PairwiseTest pooled_t_test(const std::vector<double> &x, const std::vector<double> &y) {
  PairwiseTest t;
  const double mx = mean(x), my = mean(y);
  const double df = static_cast<double>(x.size() + y.size() - 2);
  const double pooled = (sum_sq_dev(x, mx) + sum_sq_dev(y, my)) / df;
  const double se = std::sqrt(pooled * (1.0 / x.size() + 1.0 / y.size()));
  if (se <= 0.0) {
    t.t = mx == my ? 0.0 : std::copysign(std::numeric_limits<double>::infinity(), mx - my);
    t.p_raw = mx == my ? 1.0 : 0.0;
    return t;
  }
  t.t = (mx - my) / se;
  boost::math::students_t dist(df);
  t.p_raw = std::min(1.0, 2.0 * boost::math::cdf(boost::math::complement(dist, std::abs(t.t))));
  return t;
}

} // namespace

double bonferroni(double p, std::size_t comparisons) {
  return std::min(1.0, p * static_cast<double>(comparisons));
}

double f_test_p_value(double f, double df1, double df2) {
  if (f <= 0.0) return 1.0;
  if (std::isinf(f)) return 0.0;
  boost::math::fisher_f dist(df1, df2);
  return boost::math::cdf(boost::math::complement(dist, f));
}

SignificanceResult significance_tests(const std::vector<std::vector<double>> &groups) {
  if (groups.size() < 2) throw Error("significance tests need at least 2 groups");
  for (const auto &g : groups)
    if (g.size() < 2) throw Error("each group needs at least 2 values");

  std::size_t total = 0;
  double grand = 0.0;
  for (const auto &g : groups) {
    total += g.size();
    grand += std::accumulate(g.begin(), g.end(), 0.0);
  }
  grand /= static_cast<double>(total);

  double between = 0.0, within = 0.0;
  for (const auto &g : groups) {
    const double m = mean(g);
    between += static_cast<double>(g.size()) * (m - grand) * (m - grand);
    within += sum_sq_dev(g, m);
  }

  SignificanceResult r;
  r.df_between = static_cast<double>(groups.size() - 1);
  r.df_within = static_cast<double>(total - groups.size());
  const double ms_between = between / r.df_between;
  const double ms_within = within / r.df_within;
  if (between <= 0.0) {
    r.f = 0.0;
    r.p = 1.0;
  } else if (ms_within <= 0.0) {
    r.f = std::numeric_limits<double>::infinity();
    r.p = 0.0;
  } else {
    r.f = ms_between / ms_within;
    r.p = f_test_p_value(r.f, r.df_between, r.df_within);
  }

  const std::size_t pairs = groups.size() * (groups.size() - 1) / 2;
  for (std::size_t a = 0; a < groups.size(); ++a) {
    for (std::size_t b = a + 1; b < groups.size(); ++b) {
      PairwiseTest t = pooled_t_test(groups[a], groups[b]);
      t.a = a;
      t.b = b;
      t.p_adj = bonferroni(t.p_raw, pairs);
      r.pairwise.push_back(t);
    }
  }
  return r;
}

nlohmann::json to_json(const SignificanceResult &s, const std::vector<std::string> &names) {
  auto finite = [](double v) { return std::isfinite(v) ? nlohmann::json(v) : nlohmann::json(nullptr); };
  nlohmann::json pw = nlohmann::json::array();
  for (const auto &t : s.pairwise)
    pw.push_back({{"a", names.at(t.a)},
                  {"b", names.at(t.b)},
                  {"t", finite(t.t)},
                  {"p_raw", t.p_raw},
                  {"p_adj", t.p_adj}});
  return {{"F", finite(s.f)},
          {"p", s.p},
          {"df_between", s.df_between},
          {"df_within", s.df_within},
          {"test", "one-way ANOVA; pairwise pooled-variance t-tests, Bonferroni"},
          {"pairwise", pw}};
}

} // namespace prosody
