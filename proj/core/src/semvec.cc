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

#include "finrel/semvec.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <set>

#include <spdlog/spdlog.h>

#include "json.hpp"

#include "finrel/error.h"
#include "finrel/io.h"
#include "finrel/text.h"

namespace finrel {
namespace {

bool parse_float(std::string_view s, float& out) {
  // Locale-independent, whole field only.
  const char* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, out);
  return ec == std::errc() && ptr == end;
}

bool parse_size(std::string_view s, std::size_t& out) {
  const char* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, out);
  return ec == std::errc() && ptr == end;
}

template <typename U, typename V>
double cosine_impl(std::span<const U> u, std::span<const V> v) {
  if (u.size() != v.size()) {
    throw ArgumentError("cosine of vectors with dimensions " +
                        std::to_string(u.size()) + " and " +
                        std::to_string(v.size()));
  }
  double dot = 0.0, uu = 0.0, vv = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    dot += static_cast<double>(u[i]) * static_cast<double>(v[i]);
    uu += static_cast<double>(u[i]) * static_cast<double>(u[i]);
    vv += static_cast<double>(v[i]) * static_cast<double>(v[i]);
  }
  if (uu == 0.0 || vv == 0.0) {
    spdlog::warn("cosine similarity with a zero vector; returning 0");
    return 0.0;
  }
  const double c = dot / (std::sqrt(uu) * std::sqrt(vv));
  return std::clamp(c, -1.0, 1.0);
}

// Highest-similarity word of a list; first listed wins exact ties.
SimilarityMatch best_of(const EmbeddingTable& table,
                        const std::vector<double>& phrase,
                        const std::vector<std::string>& words) {
  SimilarityMatch best;
  bool found = false;
  for (const auto& w : words) {
    const auto vec = table.find(w);
    if (!vec) continue;
    const double sim = cosine(phrase, *vec);
    if (!found || sim > best.similarity) {
      best = {w, sim};
      found = true;
    }
  }
  return best;
}

std::vector<std::string> json_words(const nlohmann::json& j, const char* key,
                                    std::vector<std::string> fallback) {
  if (!j.contains(key)) return fallback;
  if (!j[key].is_array()) {
    throw ParseError(std::string("lexicon field '") + key + "' must be a list");
  }
  std::vector<std::string> out;
  for (const auto& w : j[key]) {
    if (!w.is_string()) {
      throw ParseError(std::string("lexicon field '") + key + "' must hold strings");
    }
    out.push_back(w.get<std::string>());
  }
  return out;
}

}  // namespace

EmbeddingTable::EmbeddingTable(std::size_t dimension) : dimension_(dimension) {
  if (dimension == 0) throw ArgumentError("embedding dimension must be positive");
}

bool EmbeddingTable::add(std::string_view word, std::span<const float> vector) {
  if (vector.size() != dimension_) {
    throw ValidationError("vector for '" + std::string(word) + "' has " +
                          std::to_string(vector.size()) + " components, expected " +
                          std::to_string(dimension_));
  }
  for (float x : vector) {
    if (!std::isfinite(x)) {
      throw ValidationError("vector for '" + std::string(word) +
                            "' has a non-finite component");
    }
  }
  std::string key = text::fold_case(word);
  if (index_.contains(key)) return false;
  index_.emplace(key, words_.size());
  words_.push_back(std::move(key));
  data_.insert(data_.end(), vector.begin(), vector.end());
  return true;
}

std::optional<std::span<const float>> EmbeddingTable::find(
    std::string_view word) const {
  const auto it = index_.find(text::fold_case(word));
  if (it == index_.end()) return std::nullopt;
  return std::span<const float>(data_).subspan(it->second * dimension_, dimension_);
}

EmbeddingTable parse_embeddings(std::string_view contents) {
  std::optional<EmbeddingTable> table;
  std::vector<float> values;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  bool first_content_line = true;
  while (pos < contents.size()) {
    std::size_t eol = contents.find('\n', pos);
    if (eol == std::string_view::npos) eol = contents.size();
    const std::string_view line = contents.substr(pos, eol - pos);
    pos = eol + 1;
    ++line_no;
    const auto fields = text::split_whitespace(line);
    if (fields.empty()) continue;

    if (first_content_line) {
      first_content_line = false;
      std::size_t vocab = 0, dim = 0;
      if (fields.size() == 2 && parse_size(fields[0], vocab) &&
          parse_size(fields[1], dim)) {
        if (dim == 0) throw ParseError("header declares dimension 0", line_no);
        table.emplace(dim);
        continue;
      }
    }
    if (fields.size() < 2) {
      throw ParseError("entry '" + fields[0] + "' has no vector", line_no);
    }
    const std::size_t dim = fields.size() - 1;
    if (!table) table.emplace(dim);
    if (dim != table->dimension()) {
      throw ParseError("entry '" + fields[0] + "' has " + std::to_string(dim) +
                           " values, expected " +
                           std::to_string(table->dimension()),
                       line_no);
    }
    values.resize(dim);
    for (std::size_t k = 0; k < dim; ++k) {
      if (!parse_float(fields[k + 1], values[k]) || !std::isfinite(values[k])) {
        throw ParseError("entry '" + fields[0] + "' has an invalid value '" +
                             fields[k + 1] + "'",
                         line_no);
      }
    }
    if (!table->add(fields[0], values)) {
      spdlog::warn("line {}: duplicate embedding for '{}' ignored", line_no, fields[0]);
    }
  }
  if (!table || table->size() == 0) {
    throw ParseError("embedding file has no entries; dimension undeterminable");
  }
  return std::move(*table);
}

EmbeddingTable load_embeddings(const std::string& path) {
  return parse_embeddings(read_file(path));
}

void LexiconConfig::validate() const {
  if (revenue_words.empty() || investment_words.empty() || founder_words.empty()) {
    throw ValidationError("lexicon word lists must be non-empty");
  }
  std::set<std::string> revenue;
  for (const auto& w : revenue_words) revenue.insert(text::fold_case(w));
  for (const auto& w : investment_words) {
    if (revenue.contains(text::fold_case(w))) {
      throw ValidationError("'" + w + "' is both a revenue and an investment word");
    }
  }
  if (!(threshold >= 0.0 && threshold <= 1.0)) {
    throw ValidationError("lexicon threshold must lie in [0, 1]");
  }
}

LexiconConfig load_lexicon(const std::string& path) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(read_file(path));
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("invalid lexicon JSON: ") + e.what());
  }
  if (!j.is_object()) throw ParseError("lexicon must be a JSON object");
  LexiconConfig lex;
  lex.revenue_words = json_words(j, "revenue_words", lex.revenue_words);
  lex.investment_words = json_words(j, "investment_words", lex.investment_words);
  lex.founder_words = json_words(j, "founder_words", lex.founder_words);
  if (j.contains("threshold")) {
    if (!j["threshold"].is_number()) throw ParseError("lexicon threshold must be a number");
    lex.threshold = j["threshold"].get<double>();
  }
  lex.validate();
  return lex;
}

std::optional<std::vector<double>> phrase_vector(const EmbeddingTable& table,
                                                 std::string_view phrase) {
  std::vector<double> sum(table.dimension(), 0.0);
  std::size_t hits = 0;
  for (const auto& word : text::split_whitespace(phrase)) {
    const auto vec = table.find(word);
    if (!vec) continue;
    for (std::size_t i = 0; i < sum.size(); ++i) sum[i] += (*vec)[i];
    ++hits;
  }
  if (hits == 0) return std::nullopt;
  for (double& x : sum) x /= static_cast<double>(hits);
  return sum;
}

double cosine(std::span<const double> u, std::span<const double> v) {
  return cosine_impl(u, v);
}

double cosine(std::span<const double> u, std::span<const float> v) {
  return cosine_impl(u, v);
}

std::string_view to_string(MoneyClass c) {
  switch (c) {
    case MoneyClass::kRevenue:
      return "revenue";
    case MoneyClass::kInvestment:
      return "investment";
    case MoneyClass::kUnknown:
      break;
  }
  return "unknown";
}

std::string_view to_string(PersonClass c) {
  return c == PersonClass::kFounder ? "founder" : "other";
}

MoneyVerdict classify_money_phrase_verbose(const EmbeddingTable& table,
                                           const LexiconConfig& lexicon,
                                           std::string_view phrase) {
  MoneyVerdict verdict;
  const auto vec = phrase_vector(table, phrase);
  if (!vec) return verdict;
  const SimilarityMatch revenue = best_of(table, *vec, lexicon.revenue_words);
  const SimilarityMatch investment = best_of(table, *vec, lexicon.investment_words);
  if (revenue.word.empty() && investment.word.empty()) return verdict;

  if (investment.word.empty() ||
      (!revenue.word.empty() && revenue.similarity > investment.similarity)) {
    verdict.best = revenue;
    if (revenue.similarity > lexicon.threshold) verdict.label = MoneyClass::kRevenue;
  } else if (revenue.word.empty() || investment.similarity > revenue.similarity) {
    verdict.best = investment;
    if (investment.similarity > lexicon.threshold) {
      verdict.label = MoneyClass::kInvestment;
    }
  } else {
    verdict.best = revenue;  // tie across groups stays unknown
  }
  return verdict;
}

MoneyClass classify_money_phrase(const EmbeddingTable& table,
                                 const LexiconConfig& lexicon,
                                 std::string_view phrase) {
  return classify_money_phrase_verbose(table, lexicon, phrase).label;
}

PersonVerdict classify_person_phrase_verbose(const EmbeddingTable& table,
                                             const LexiconConfig& lexicon,
                                             std::string_view phrase,
                                             std::string_view context) {
  PersonVerdict verdict;
  std::string joined(phrase);
  if (!context.empty()) {
    joined += ' ';
    joined += context;
  }
  const auto vec = phrase_vector(table, joined);
  if (!vec) return verdict;
  verdict.best = best_of(table, *vec, lexicon.founder_words);
  if (!verdict.best.word.empty() && verdict.best.similarity > lexicon.threshold) {
    verdict.label = PersonClass::kFounder;
  }
  return verdict;
}

PersonClass classify_person_phrase(const EmbeddingTable& table,
                                   const LexiconConfig& lexicon,
                                   std::string_view phrase,
                                   std::string_view context) {
  return classify_person_phrase_verbose(table, lexicon, phrase, context).label;
}

}  // namespace finrel
