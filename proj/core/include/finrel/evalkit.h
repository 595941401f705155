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

#ifndef FINREL_EVALKIT_H_
#define FINREL_EVALKIT_H_

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "finrel/corpus.h"

namespace finrel {

enum class MatchMode { kExact, kFuzzy };

std::string_view to_string(MatchMode mode);

struct EvalConfig {
  MatchMode mode = MatchMode::kExact;
  double fuzzy_threshold = 0.90;  // in (0, 1]; inclusive
  bool strip_separators = true;   // drop ',' and '|' before tokenizing

  void validate() const;
};

// Unit-cost Levenshtein distance over Unicode code points.
std::size_t edit_distance(std::u32string_view a, std::u32string_view b);

// 1 - distance / max(|a|, |b|) over case-folded code points; 1 for two
// empty strings.
double similarity(std::string_view a, std::string_view b);

bool word_match(std::string_view a, std::string_view b, const EvalConfig& cfg);

struct Counts {
  std::uint64_t tp = 0;
  std::uint64_t tn = 0;
  std::uint64_t fp = 0;
  std::uint64_t fn = 0;

  Counts& operator+=(const Counts& o) {
    tp += o.tp;
    tn += o.tn;
    fp += o.fp;
    fn += o.fn;
    return *this;
  }
  std::uint64_t total() const { return tp + tn + fp + fn; }
  friend bool operator==(const Counts&, const Counts&) = default;
};

std::vector<std::string> scoring_tokens(std::string_view s,
                                        const EvalConfig& cfg);

// Positional word comparison. Position i with both words present is TP on
// a match and FP otherwise; a target word with no predicted word is FN; a
// predicted word past the end of the target is FP. Two empty strings
// count as one TN.
Counts score_example(std::string_view target, std::string_view predicted,
                     const EvalConfig& cfg);

struct EvalReport {
  Counts counts;
  double accuracy = 0.0;
  double precision = 0.0;
  double recall = 0.0;
  double specificity = 0.0;
  double f1 = 0.0;
};

// Ratios with a zero denominator are reported as 0.
EvalReport make_report(const Counts& counts);
EvalReport aggregate(std::span<const Counts> scores);

// F1 from precision and recall; 0 when both are 0.
double f1_score(double precision, double recall);

struct ExampleScore {
  std::string id;
  Counts counts;
};

struct CorpusEvaluation {
  EvalReport report;
  std::vector<ExampleScore> per_example;  // gold order
};

// Scores every gold example against predictions[id]. Throws
// ValidationError listing the gold ids that have no prediction.
CorpusEvaluation evaluate_corpus(
    const std::vector<GoldExample>& gold,
    const std::map<std::string, std::string>& predictions,
    const EvalConfig& cfg);

// Pretty-printed JSON: counters, the five metrics rounded to 4 decimals,
// and the scoring configuration.
std::string report_to_json(const EvalReport& report, const EvalConfig& cfg);

// JSON lines, one {"id", "tp", "tn", "fp", "fn"} object per example.
std::string per_example_to_json_lines(std::span<const ExampleScore> scores);

}  // namespace finrel

#endif  // FINREL_EVALKIT_H_
