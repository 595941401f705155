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

#ifndef FINREL_CORPUS_H_
#define FINREL_CORPUS_H_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace finrel {

// Coarse universal part-of-speech tags.
enum class Pos {
  kNoun, kPropn, kVerb, kAdj, kAdv, kAdp, kDet, kNum, kSym, kPunct,
  kPron, kAux, kCconj, kSconj, kPart, kIntj, kX
};

std::string_view to_string(Pos pos);
std::optional<Pos> pos_from_string(std::string_view s);

enum class EntityLabel { kOrg, kPerson, kGpe, kMoney, kDate };

std::string_view to_string(EntityLabel label);
std::optional<EntityLabel> entity_label_from_string(std::string_view s);

struct Token {
  int index = 0;
  std::string text;
  std::string lemma;
  Pos pos = Pos::kX;
  std::string dep;  // open label set; "ROOT" iff head == index
  int head = 0;
  int sentence = 0;
  // Byte range of the token inside the document text, set by make_document.
  std::size_t char_begin = 0;
  std::size_t char_end = 0;
};

// Token range [start, end). text is the document substring the span covers.
struct EntitySpan {
  int start = 0;
  int end = 0;
  EntityLabel label = EntityLabel::kOrg;
  std::string text;

  bool contains(int token) const { return start <= token && token < end; }
  friend bool operator==(const EntitySpan&, const EntitySpan&) = default;
};

struct NounChunk {
  int start = 0;
  int end = 0;
  int root = 0;

  bool contains(int token) const { return start <= token && token < end; }
  friend bool operator==(const NounChunk&, const NounChunk&) = default;
};

// One paragraph with its parse. Instances built through make_document or
// the loaders satisfy every invariant: per-sentence heads form a tree with
// a single ROOT, spans are in bounds, entities never overlap, and noun
// chunks never overlap.
struct AnnotatedDocument {
  std::string id;
  std::string text;
  std::vector<Token> tokens;
  std::vector<EntitySpan> entities;  // sorted by start
  std::vector<NounChunk> noun_chunks;  // sorted by start

  int size() const { return static_cast<int>(tokens.size()); }
  // Surface text of tokens [start, end), spacing taken from the document.
  std::string span_text(int start, int end) const;
};

// Aligns tokens to text, fills EntitySpan::text, sorts spans, and validates.
// Throws ValidationError naming the document id on any violation.
AnnotatedDocument make_document(std::string id, std::string text,
                                std::vector<Token> tokens,
                                std::vector<EntitySpan> entities,
                                std::vector<NounChunk> noun_chunks);

// Parses one JSON document record. Throws ParseError (without a line) on
// malformed JSON or missing fields, ValidationError on invariant breaks.
AnnotatedDocument parse_document(std::string_view json_line);

// Inverse of parse_document: a single-line JSON object in schema order.
std::string document_to_json_line(const AnnotatedDocument& doc);

// Reads a JSON-lines document file. Blank lines are skipped. Parse errors
// carry the 1-based line number.
std::vector<AnnotatedDocument> load_documents(const std::string& path);

struct GoldExample {
  std::string id;
  std::string input_text;
  std::string target_text;  // empty: no relevant information

  bool informative() const { return !target_text.empty(); }
  friend bool operator==(const GoldExample&, const GoldExample&) = default;
};

// Reads a JSON-lines gold file with id, input_text, target_text per line.
// Non-empty targets must parse as records.
std::vector<GoldExample> load_gold(const std::string& path);
GoldExample parse_gold_line(std::string_view json_line);
std::string gold_to_json_line(const GoldExample& example);

struct SplitResult {
  std::vector<GoldExample> train;
  std::vector<GoldExample> test;
  std::size_t requested_test_size = 0;
  // True when the dedup rule left fewer eligible test candidates than
  // requested.
  bool shortfall = false;
};

// Seeded, non-stratified train/test split. The test set has
// round(test_fraction * n) examples unless deduplication forces fewer:
// an informative test example's information content may not equal, or be
// contained in, any train example's information content. Examples with
// an empty target carry no information and are exempt. Both outputs keep
// input order. Throws ArgumentError for a fraction outside (0, 1) or
// empty input, and Error when no test example can be drawn at all.
SplitResult split_train_test(const std::vector<GoldExample>& gold,
                             double test_fraction, std::uint64_t seed);

struct BalancedSubset {
  std::vector<GoldExample> examples;  // input order
  std::size_t informative = 0;
  std::size_t empty = 0;
  bool shortfall = false;  // fewer empty examples than informative ones
};

// Every informative example plus an equal number of seeded-uniformly drawn
// empty-target examples. Throws ArgumentError if nothing is informative.
BalancedSubset balanced_subset(const std::vector<GoldExample>& train,
                               std::uint64_t seed);

}  // namespace finrel

#endif  // FINREL_CORPUS_H_
