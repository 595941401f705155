// Copyright 2026 The finrel Authors.
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

#include <gtest/gtest.h>

#include <map>
#include <random>
#include <string>
#include <vector>

#include "finrel/corpus.h"
#include "finrel/error.h"
#include "finrel/evalkit.h"
#include "finrel/text.h"
#include "oracles.h"

namespace finrel {
namespace {

EvalConfig fuzzy(double threshold) {
  EvalConfig cfg;
  cfg.mode = MatchMode::kFuzzy;
  cfg.fuzzy_threshold = threshold;
  return cfg;
}

const std::string kJumia =
    "Jumia, revenue, \xE2\x82\xAC" "41 million, Q4 2020| "
    "Jumia, revenue, \xE2\x82\xAC" "33.7 million, Q3 2020|";

TEST(WordMatch, Examples) {
  const EvalConfig exact;
  EXPECT_TRUE(word_match("Jumia", "jumia", exact));
  EXPECT_FALSE(word_match("million", "millions", exact));
  EXPECT_FALSE(word_match("million", "millions", fuzzy(0.90)));
  EXPECT_TRUE(word_match("investment", "investmant", fuzzy(0.90)));
  EXPECT_FALSE(word_match("investment", "investmant", fuzzy(0.91)));
  EXPECT_TRUE(word_match("million", "millions", fuzzy(0.875)));
}

TEST(Similarity, Examples) {
  EXPECT_DOUBLE_EQ(similarity("million", "millions"), 0.875);
  EXPECT_DOUBLE_EQ(similarity("", ""), 1.0);
  EXPECT_DOUBLE_EQ(similarity("ABC", "abc"), 1.0);
  EXPECT_DOUBLE_EQ(similarity("\xE2\x82\xAC" "41", "$41"), 1.0 - 1.0 / 3.0);
}

TEST(EditDistance, Basics) {
  EXPECT_EQ(edit_distance(U"kitten", U"sitting"), 3u);
  EXPECT_EQ(edit_distance(U"", U"abc"), 3u);
  EXPECT_EQ(edit_distance(U"abc", U""), 3u);
  EXPECT_EQ(edit_distance(U"€41", U"$41"), 1u);
}

std::u32string random_word(std::mt19937_64& rng, std::size_t max_len) {
  static const char32_t alphabet[] = {U'a', U'b', U'c', U'd', U'€', U'é', U'1'};
  std::u32string s(rng() % (max_len + 1), U'a');
  for (auto& c : s) c = alphabet[rng() % std::size(alphabet)];
  return s;
}

TEST(EditDistance, MatchesFullMatrixOracle) {
  std::mt19937_64 rng(2024);
  for (int i = 0; i < 3000; ++i) {
    const std::size_t max_len = i % 3 == 0 ? 150 : 20;
    const auto a = random_word(rng, max_len), b = random_word(rng, max_len);
    ASSERT_EQ(edit_distance(a, b), oracle::levenshtein(a, b)) << a.size() << "/" << b.size();
  }
}

TEST(EditDistance, LengthBoundaries) {
  std::mt19937_64 rng(1);
  for (std::size_t n : {63u, 64u, 65u, 128u}) {
    for (int i = 0; i < 50; ++i) {
      auto a = random_word(rng, 0), b = random_word(rng, 0);
      a.resize(n, U'a');
      b.resize(n - rng() % 3, U'b');
      for (auto& c : a) c = U"abc"[rng() % 3];
      for (auto& c : b) c = U"abc"[rng() % 3];
      ASSERT_EQ(edit_distance(a, b), oracle::levenshtein(a, b));
    }
  }
}

TEST(Tokens, SeparatorsAreRemoved) {
  const EvalConfig cfg;
  EXPECT_EQ(scoring_tokens("Apple, revenue, x|", cfg),
            (std::vector<std::string>{"Apple", "revenue", "x"}));
  EvalConfig keep;
  keep.strip_separators = false;
  EXPECT_EQ(scoring_tokens("Apple, revenue|", keep),
            (std::vector<std::string>{"Apple,", "revenue|"}));
  EXPECT_EQ(scoring_tokens("a,b", cfg), (std::vector<std::string>{"ab"}));
}

TEST(ScoreExample, Examples) {
  const EvalConfig cfg;
  EXPECT_EQ(score_example(kJumia, kJumia, cfg), (Counts{12, 0, 0, 0}));
  EXPECT_EQ(score_example("", "", cfg), (Counts{0, 1, 0, 0}));
  EXPECT_EQ(score_example("Apple revenue $9.4 million unknown-date",
                          "Apple revenue $9.4 million", cfg),
            (Counts{4, 0, 0, 1}));
  EXPECT_EQ(score_example("Apple", "Apple revenue", cfg), (Counts{1, 0, 1, 0}));
  EXPECT_EQ(score_example("Apple revenue", "Apple income", cfg), (Counts{1, 0, 1, 0}));
  EXPECT_EQ(score_example("", "x y", cfg), (Counts{0, 0, 2, 0}));
  EXPECT_EQ(score_example("x y", "", cfg), (Counts{0, 0, 0, 2}));
  EXPECT_EQ(score_example(" | ", "", cfg), (Counts{0, 1, 0, 0}));
}

std::string random_text(std::mt19937_64& rng) {
  static const std::vector<std::string> words{"Jumia", "jumia", "revenue", "million",
                                              "millions", "Q3", "2020,", "|", "a"};
  std::string out;
  const int n = static_cast<int>(rng() % 10);
  for (int i = 0; i < n; ++i) {
    if (i) out += ' ';
    out += words[rng() % words.size()];
  }
  return out;
}

TEST(ScoreExample, FuzzyIsMonotoneAndOneEqualsExact) {
  std::mt19937_64 rng(8);
  for (int i = 0; i < 2000; ++i) {
    const auto t = random_text(rng), p = random_text(rng);
    const auto exact = score_example(t, p, EvalConfig{});
    EXPECT_EQ(score_example(t, p, fuzzy(1.0)), exact);
    const auto loose = score_example(t, p, fuzzy(0.8));
    const auto mid = score_example(t, p, fuzzy(0.9));
    EXPECT_GE(mid.tp, exact.tp);
    EXPECT_GE(loose.tp, mid.tp);
    EXPECT_EQ(loose.total(), exact.total());
    EXPECT_EQ(exact.fn, loose.fn);
    EXPECT_EQ(exact.tp + exact.fp + exact.fn + exact.tn,
              std::max<std::uint64_t>(1, std::max(scoring_tokens(t, {}).size(),
                                                  scoring_tokens(p, {}).size())));
  }
}

TEST(Report, F1Rows) {
  EXPECT_NEAR(f1_score(0.0606, 0.0557), 0.058, 1e-3);
  EXPECT_NEAR(f1_score(0.5420, 0.6825), 0.604, 1e-3);
  EXPECT_DOUBLE_EQ(f1_score(0, 0), 0.0);
}

TEST(Report, ZeroCounters) {
  const auto r = make_report({});
  EXPECT_EQ(r.accuracy, 0.0);
  EXPECT_EQ(r.precision, 0.0);
  EXPECT_EQ(r.recall, 0.0);
  EXPECT_EQ(r.specificity, 0.0);
  EXPECT_EQ(r.f1, 0.0);
}

TEST(Report, AggregateSums) {
  const std::vector<Counts> scores{{3, 0, 1, 0}, {0, 1, 0, 0}, {1, 0, 0, 2}};
  const auto r = aggregate(scores);
  EXPECT_EQ(r.counts, (Counts{4, 1, 1, 2}));
  EXPECT_DOUBLE_EQ(r.accuracy, 5.0 / 8.0);
  EXPECT_DOUBLE_EQ(r.precision, 4.0 / 5.0);
  EXPECT_DOUBLE_EQ(r.recall, 4.0 / 6.0);
  EXPECT_DOUBLE_EQ(r.specificity, 1.0 / 2.0);
  EXPECT_DOUBLE_EQ(r.f1, 2 * 0.8 * (4.0 / 6.0) / (0.8 + 4.0 / 6.0));
}

TEST(EvaluateCorpus, Examples) {
  const EvalConfig cfg;
  const std::vector<GoldExample> one{{"a", "x", "Apple, revenue, $9.4 million, unknown-date|"}};
  EXPECT_DOUBLE_EQ(
      evaluate_corpus(one, {{"a", "Apple, revenue, $9.4 million, unknown-date|"}}, cfg)
          .report.accuracy,
      1.0);

  const std::vector<GoldExample> two{{"a", "x", "A, revenue, 1, 2020|"},
                                     {"b", "y", "B, revenue, 2, 2021|"}};
  const auto eval = evaluate_corpus(
      two, {{"a", "A, revenue, 1, 2020|"}, {"b", "C, investment, 3, 2022|"}}, cfg);
  EXPECT_DOUBLE_EQ(eval.report.precision, 0.5);
  ASSERT_EQ(eval.per_example.size(), 2u);
  EXPECT_EQ(eval.per_example[1].id, "b");
  EXPECT_EQ(eval.per_example[1].counts, (Counts{0, 0, 4, 0}));

  EXPECT_THROW(evaluate_corpus(two, {{"a", ""}}, cfg), ValidationError);
}

TEST(EvaluateCorpus, ReportJson) {
  EvalReport r = make_report({2, 1, 1, 0});
  const auto json = report_to_json(r, fuzzy(0.9));
  EXPECT_EQ(json,
            "{\n"
            "  \"tp\": 2,\n"
            "  \"tn\": 1,\n"
            "  \"fp\": 1,\n"
            "  \"fn\": 0,\n"
            "  \"accuracy\": 0.75,\n"
            "  \"precision\": 0.6667,\n"
            "  \"recall\": 1.0,\n"
            "  \"specificity\": 0.5,\n"
            "  \"f1\": 0.8,\n"
            "  \"mode\": \"fuzzy\",\n"
            "  \"fuzzy_threshold\": 0.9,\n"
            "  \"strip_separators\": true\n"
            "}\n");
  const std::vector<ExampleScore> per{{"a", {1, 0, 0, 0}}};
  EXPECT_EQ(per_example_to_json_lines(per), "{\"id\":\"a\",\"tp\":1,\"tn\":0,\"fp\":0,\"fn\":0}\n");
}

TEST(EvalConfig, Validate) {
  EXPECT_NO_THROW(fuzzy(1.0).validate());
  EXPECT_THROW(fuzzy(0.0).validate(), ArgumentError);
  EXPECT_THROW(fuzzy(1.01).validate(), ArgumentError);
}

}  // namespace
}  // namespace finrel
