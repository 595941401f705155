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

#ifndef FINREL_SEMVEC_H_
#define FINREL_SEMVEC_H_

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace finrel {

// Static word vectors keyed by case-folded word.
class EmbeddingTable {
 public:
  explicit EmbeddingTable(std::size_t dimension);

  std::size_t dimension() const { return dimension_; }
  std::size_t size() const { return words_.size(); }

  // Returns false (and stores nothing) if the folded word is already
  // present. Throws ValidationError on a wrong-sized or non-finite vector.
  bool add(std::string_view word, std::span<const float> vector);

  std::optional<std::span<const float>> find(std::string_view word) const;

  // Words in insertion order.
  const std::vector<std::string>& words() const { return words_; }

 private:
  std::size_t dimension_;
  std::vector<std::string> words_;
  std::vector<float> data_;
  std::unordered_map<std::string, std::size_t> index_;
};

// Text format: `word v1 ... vD` per line, optional leading `V D` header.
// Duplicate words keep the first occurrence and log a warning.
EmbeddingTable load_embeddings(const std::string& path);
EmbeddingTable parse_embeddings(std::string_view contents);

struct LexiconConfig {
  std::vector<std::string> revenue_words{"revenue", "income", "earnings",
                                         "proceeds", "returns", "made"};
  std::vector<std::string> investment_words{"raised", "investment",
                                            "received", "equity"};
  std::vector<std::string> founder_words{"founder", "co-founder", "cofounder",
                                         "founded", "started", "created"};
  double threshold = 0.5;

  // Throws ValidationError: empty list, revenue/investment overlap, or a
  // threshold outside [0, 1].
  void validate() const;
};

// JSON object with optional keys revenue_words, investment_words,
// founder_words, threshold; absent keys keep the defaults.
LexiconConfig load_lexicon(const std::string& path);

// Mean of the vectors of the case-folded whitespace tokens of phrase found
// in the table. nullopt when every token is out of vocabulary.
std::optional<std::vector<double>> phrase_vector(const EmbeddingTable& table,
                                                 std::string_view phrase);

// Cosine similarity. A zero vector yields 0 and a logged warning; unequal
// dimensions throw ArgumentError.
double cosine(std::span<const double> u, std::span<const double> v);
double cosine(std::span<const double> u, std::span<const float> v);

enum class MoneyClass { kRevenue, kInvestment, kUnknown };
enum class PersonClass { kFounder, kOther };

std::string_view to_string(MoneyClass c);
std::string_view to_string(PersonClass c);

// Best-matching lexicon word behind a classifier decision. word is empty
// when the phrase was fully out of vocabulary or no lexicon word was.
struct SimilarityMatch {
  std::string word;
  double similarity = 0.0;
};

struct MoneyVerdict {
  MoneyClass label = MoneyClass::kUnknown;
  SimilarityMatch best;
};

// Compares the phrase vector against every in-vocabulary revenue and
// investment word and keeps the single most similar word. Its group wins
// when the similarity strictly exceeds the threshold; a revenue word and
// an investment word tied at the maximum give kUnknown.
MoneyVerdict classify_money_phrase_verbose(const EmbeddingTable& table,
                                           const LexiconConfig& lexicon,
                                           std::string_view phrase);
MoneyClass classify_money_phrase(const EmbeddingTable& table,
                                 const LexiconConfig& lexicon,
                                 std::string_view phrase);

struct PersonVerdict {
  PersonClass label = PersonClass::kOther;
  SimilarityMatch best;
};

// Same max-similarity test against founder words, applied to
// "phrase context".
PersonVerdict classify_person_phrase_verbose(const EmbeddingTable& table,
                                             const LexiconConfig& lexicon,
                                             std::string_view phrase,
                                             std::string_view context);
PersonClass classify_person_phrase(const EmbeddingTable& table,
                                   const LexiconConfig& lexicon,
                                   std::string_view phrase,
                                   std::string_view context);

}  // namespace finrel

#endif  // FINREL_SEMVEC_H_
