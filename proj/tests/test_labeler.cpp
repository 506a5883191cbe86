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

#include <doctest.h>

#include "prosody/fixtures.hpp"
#include "prosody/labeler.hpp"

using namespace prosody;

namespace {

Line line_at(Polarity p, std::size_t frame, double strength) {
  Line l;
  l.polarity = p;
  l.anchor_frame = frame;
  l.strength = strength;
  l.points = {{0, frame, p == Polarity::ridge ? strength : -strength}};
  return l;
}

} // namespace

TEST_CASE("word scores: containment and nearest end") {
  const auto al = build_alignment("x", {{"a", 0.4, 0.7}, {"b", 0.7, 1.0}}, {});
  const auto s = assign_word_scores({line_at(Polarity::ridge, 100, 0.8)}, {}, al, 0.005);
  CHECK(s[0].prominence == doctest::Approx(0.8));
  CHECK(s[1].prominence == 0.0);

  const auto two = build_alignment("x", {{"a", 0.2, 0.8}, {"b", 0.8, 1.5}}, {});
  const auto v = assign_word_scores({}, {line_at(Polarity::valley, 158, 0.6)}, two, 0.005);
  CHECK(v[0].boundary == doctest::Approx(0.6));
  CHECK(v[1].boundary == 0.0);

  const auto none = assign_word_scores({}, {}, two, 0.005);
  for (const auto &w : none) CHECK((w.prominence == 0.0 && w.boundary == 0.0));
}

TEST_CASE("word scores: valleys in pauses go to the preceding word") {
  const auto al =
      build_alignment("x", {{"sil", 0.0, 0.3}, {"a", 0.3, 0.6}, {"sil", 0.6, 1.2}, {"b", 1.2, 1.5}}, {});
  // 1.1 s is nearer the end of "b" than of "a" but lies inside the pause.
  const auto s = assign_word_scores(
      {}, {line_at(Polarity::valley, 220, 0.9), line_at(Polarity::valley, 20, 0.7)}, al, 0.005);
  CHECK(s[0].boundary == doctest::Approx(0.9));
  CHECK(s[1].boundary == 0.0);
  CHECK_THROWS_AS(assign_word_scores({}, {}, build_alignment("x", {{"sil", 0, 1}}, {}), 0.005),
                  Error);
}

TEST_CASE("discretize is lower-inclusive") {
  CHECK(discretize(0.2, {0.5, 1.5}) == 0);
  CHECK(discretize(0.7, {0.5, 1.5}) == 1);
  CHECK(discretize(2.0, {0.5, 1.5}) == 2);
  CHECK(discretize(0.5, {0.5, 1.5}) == 1);
  CHECK(discretize(1.5, {0.5, 1.5}) == 2);
  CHECK_THROWS_AS(discretize(-0.1, {0.5, 1.5}), Error);
}

TEST_CASE("annotate: designed emphasis wins, output repeatable") {
  fixtures::Options opts;
  opts.count = 3;
  const auto utts = fixtures::generate(opts);
  for (const auto &u : utts) {
    const auto al = build_alignment(u.id, u.words, u.phones);
    const auto words = annotate_utterance(u.audio, al, Config{});
    REQUIRE(words.size() == u.design.size());
    std::size_t emph = 0;
    for (std::size_t i = 0; i < u.design.size(); ++i)
      if (u.design[i].role == fixtures::Role::emphasized) emph = i;
    for (std::size_t i = 0; i < words.size(); ++i)
      if (i != emph) CHECK(words[emph].prominence > words[i].prominence);
    CHECK(annotate_utterance(u.audio, al, Config{}, Exec::serial) == words);
  }
}

TEST_CASE("annotate: duration mismatch") {
  AudioBuffer a;
  a.sample_rate = 16000;
  a.samples.assign(16000, 0.0);
  const auto al = build_alignment("x", {{"a", 0.0, 1.5}, {"b", 1.5, 3.0}}, {});
  CHECK_THROWS_WITH_AS(annotate_utterance(a, al, Config{}), doctest::Contains("duration mismatch"),
                       Error);
}

TEST_CASE("annotation records round trip through JSON") {
  WordAnnotation w{"hello", 0.1, 0.5, 1.2345, 0.5, 2, 1};
  const auto rec = annotation_record("u1", {w}, "abc");
  CHECK(rec["id"] == "u1");
  CHECK(rec["config_hash"] == "abc");
  const auto back = parse_annotation_record(nlohmann::json::parse(rec.dump()));
  REQUIRE(back.words.size() == 1);
  CHECK(back.words[0] == w);
  CHECK(round4(0.123456) == doctest::Approx(0.1235));
}

TEST_CASE("standardized rows have unit RMS") {
  Scalogram s;
  s.coefficients = Matrix(2, 4);
  s.coefficients(0, 0) = 2;
  s.coefficients(0, 1) = -2;
  standardize_rows(s);
  double acc = 0;
  for (double v : s.coefficients.row(0)) acc += v * v;
  CHECK(acc / 4 == doctest::Approx(1.0));
  for (double v : s.coefficients.row(1)) CHECK(v == 0.0);
}
