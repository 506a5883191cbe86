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

#include "prosody/augment.hpp"
#include "support.hpp"

using namespace prosody;

namespace {

std::vector<WordAnnotation> labels(const Transcript &t, std::vector<std::pair<int, int>> pb) {
  std::vector<WordAnnotation> out;
  const auto words = t.words();
  for (std::size_t i = 0; i < pb.size(); ++i) {
    WordAnnotation w;
    w.word = i < words.size() ? words[i] : "extra";
    w.p_class = pb[i].first;
    w.b_class = pb[i].second;
    out.push_back(w);
  }
  return out;
}

} // namespace

TEST_CASE("tokenize: kept marks, dropped characters, collapsed repeats") {
  const auto t = tokenize_transcript("\"Well,, I insist!\" -- that's it...");
  REQUIRE(t.tokens.size() == 8);
  CHECK(t.words() == std::vector<std::string>{"Well", "I", "insist", "that's", "it"});
  CHECK(t.tokens[1] == TranscriptToken{TranscriptToken::Kind::punct, ","});
  CHECK(t.tokens.back() == TranscriptToken{TranscriptToken::Kind::punct, "."});
  CHECK(t.dropped.find('"') != std::string::npos);
  CHECK(t.dropped.find('-') != std::string::npos);
}

TEST_CASE("phonemize") {
  const auto lex = load_lexicon(testing::data_path("mini.dict"));
  CHECK(phonemize("insist", lex) == std::vector<std::string>{"ih2", "n", "s", "ih1", "s", "t"});
  CHECK(phonemize("That", lex) == std::vector<std::string>{"dh", "ae1", "t"});
  CHECK(phonemize("zzqx", lex) == std::vector<std::string>{"z", "z", "q", "x"});
  CHECK_THROWS_AS(phonemize("zzqx", lex, OovPolicy::error), Error);
}

TEST_CASE("augment: token format") {
  const auto lex = load_lexicon(testing::data_path("mini.dict"));
  const auto t = tokenize_transcript("I insist, that");
  CHECK(augment_transcript(t, labels(t, {{1, 0}, {2, 2}, {0, 0}}), lex) ==
        "<p1> ay1 <b0> <p2> ih2 n s ih1 s t , <b2> <p0> dh ae1 t <b0>");
  const auto a = tokenize_transcript("a");
  CHECK(augment_transcript(a, labels(a, {{0, 0}}), lex) == "<p0> ah0 <b0>");
  CHECK_THROWS_WITH_AS(augment_transcript(t, labels(t, {{1, 0}, {2, 2}}), lex),
                       doctest::Contains("word-sequence mismatch at index 2"), Error);
  auto wrong = labels(t, {{1, 0}, {2, 2}, {0, 0}});
  wrong[1].word = "persist";
  CHECK_THROWS_WITH_AS(augment_transcript(t, wrong, lex),
                       doctest::Contains("word-sequence mismatch at index 1"), Error);
}

TEST_CASE("parse augmented strings") {
  const auto words = parse_augmented("<p1> ay1 <b0> <p2> ih2 n s ih1 s t , <b2> <p0> dh ae1 t <b0>");
  REQUIRE(words.size() == 3);
  CHECK(words[0].p_class == 1);
  CHECK(words[1].p_class == 2);
  CHECK(words[1].b_class == 2);
  CHECK(words[1].punct == ',');
  CHECK_FALSE(words[2].punct.has_value());
  CHECK(words[2].phones == std::vector<std::string>{"dh", "ae1", "t"});
  CHECK_THROWS_WITH_AS(parse_augmented("ay1 <b0>"),
                       doctest::Contains("phones before prominence token"), Error);
  CHECK_THROWS_WITH_AS(parse_augmented("<p1> ay1"), doctest::Contains("missing boundary token"),
                       Error);
  CHECK_THROWS_AS(parse_augmented("<p1> ay1 <x3> <b0>"), Error);
}

TEST_CASE("label overrides") {
  const auto o = parse_overrides("{\"id\": \"u1\", \"labels\": [[2, 0], [0, 2]]}\n\n");
  REQUIRE(o.count("u1"));
  const auto t = tokenize_transcript("hello world.", "u1");
  const auto ann = annotations_from_override(t, o.at("u1"));
  REQUIRE(ann.size() == 2);
  CHECK(ann[0].p_class == 2);
  CHECK(ann[1].b_class == 2);
  CHECK_THROWS_AS(annotations_from_override(t, {{1, 1}}), Error);
  CHECK_THROWS_AS(parse_overrides("{\"id\": \"u1\", \"labels\": [[3, 0]]}"), Error);
}

TEST_CASE("transcript files") {
  const auto ts = parse_transcripts("a|Raw text 1|normalized text one\nb\tsecond one\n");
  REQUIRE(ts.size() == 2);
  CHECK(ts[0].utterance_id == "a");
  CHECK(ts[0].words() == std::vector<std::string>{"normalized", "text", "one"});
  CHECK(ts[1].words().size() == 2);
}
