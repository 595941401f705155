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

#include "finrel/corpus.h"

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <map>
#include <random>
#include <utility>

#include <spdlog/spdlog.h>

#include "json.hpp"

#include "finrel/error.h"
#include "finrel/io.h"
#include "finrel/records.h"
#include "finrel/text.h"

namespace finrel {
namespace {

using nlohmann::json;

constexpr std::array<std::pair<Pos, std::string_view>, 17> kPosNames{{
    {Pos::kNoun, "NOUN"},   {Pos::kPropn, "PROPN"}, {Pos::kVerb, "VERB"},
    {Pos::kAdj, "ADJ"},     {Pos::kAdv, "ADV"},     {Pos::kAdp, "ADP"},
    {Pos::kDet, "DET"},     {Pos::kNum, "NUM"},     {Pos::kSym, "SYM"},
    {Pos::kPunct, "PUNCT"}, {Pos::kPron, "PRON"},   {Pos::kAux, "AUX"},
    {Pos::kCconj, "CCONJ"}, {Pos::kSconj, "SCONJ"}, {Pos::kPart, "PART"},
    {Pos::kIntj, "INTJ"},   {Pos::kX, "X"},
}};

constexpr std::array<std::pair<EntityLabel, std::string_view>, 5> kLabelNames{{
    {EntityLabel::kOrg, "ORG"},
    {EntityLabel::kPerson, "PERSON"},
    {EntityLabel::kGpe, "GPE"},
    {EntityLabel::kMoney, "MONEY"},
    {EntityLabel::kDate, "DATE"},
}};

[[noreturn]] void invalid(const std::string& id, const std::string& what) {
  throw ValidationError("document '" + id + "': " + what);
}

void align_tokens(AnnotatedDocument& doc) {
  std::size_t cursor = 0;
  for (auto& tok : doc.tokens) {
    if (tok.text.empty()) invalid(doc.id, "token " + std::to_string(tok.index) + " is empty");
    while (cursor < doc.text.size() &&
           std::isspace(static_cast<unsigned char>(doc.text[cursor]))) {
      ++cursor;
    }
    if (doc.text.compare(cursor, tok.text.size(), tok.text) != 0) {
      invalid(doc.id, "token " + std::to_string(tok.index) + " '" + tok.text +
                          "' does not match the text at byte " +
                          std::to_string(cursor));
    }
    tok.char_begin = cursor;
    tok.char_end = cursor + tok.text.size();
    cursor = tok.char_end;
  }
}

void validate_tree(const AnnotatedDocument& doc) {
  const int n = doc.size();
  std::map<int, int> roots_per_sentence;
  int previous_sentence = 0;
  for (int t = 0; t < n; ++t) {
    const Token& tok = doc.tokens[t];
    if (tok.index != t) {
      invalid(doc.id, "token at position " + std::to_string(t) +
                          " has index " + std::to_string(tok.index));
    }
    if (tok.head < 0 || tok.head >= n) {
      invalid(doc.id, "token " + std::to_string(t) + " head " +
                          std::to_string(tok.head) + " is out of range");
    }
    if (tok.sentence < previous_sentence) {
      invalid(doc.id, "sentence ids decrease at token " + std::to_string(t));
    }
    previous_sentence = tok.sentence;
    if (doc.tokens[tok.head].sentence != tok.sentence) {
      invalid(doc.id, "token " + std::to_string(t) + " has its head in another sentence");
    }
    const bool is_root = tok.head == t;
    if (is_root != (tok.dep == "ROOT")) {
      invalid(doc.id, "token " + std::to_string(t) +
                          " must be labeled ROOT exactly when it heads itself");
    }
    if (is_root) ++roots_per_sentence[tok.sentence];
  }
  for (int t = 0; t < n; ++t) {
    const int s = doc.tokens[t].sentence;
    if (roots_per_sentence[s] != 1) {
      invalid(doc.id, "sentence " + std::to_string(s) + " has " +
                          std::to_string(roots_per_sentence[s]) + " roots");
    }
  }
  // With exactly one self-loop per sentence, a chain that does not reach it
  // within n steps is cyclic.
  for (int t = 0; t < n; ++t) {
    int cur = t;
    int steps = 0;
    while (doc.tokens[cur].head != cur) {
      cur = doc.tokens[cur].head;
      if (++steps > n) invalid(doc.id, "cyclic head chain through token " + std::to_string(t));
    }
  }
}

template <typename Span>
void validate_ranges(const AnnotatedDocument& doc, const std::vector<Span>& spans,
                     const char* what) {
  const int n = doc.size();
  for (std::size_t k = 0; k < spans.size(); ++k) {
    const Span& s = spans[k];
    if (s.start < 0 || s.start >= s.end || s.end > n) {
      invalid(doc.id, std::string(what) + " [" + std::to_string(s.start) + ", " +
                          std::to_string(s.end) + ") is out of range");
    }
    if (k > 0 && spans[k - 1].end > s.start) {
      invalid(doc.id, std::string(what) + "s overlap at token " + std::to_string(s.start));
    }
  }
}

int json_int(const json& j, const char* key, const std::string& where) {
  if (!j.contains(key) || !j[key].is_number_integer()) {
    throw ParseError(where + ": missing integer field '" + key + "'");
  }
  return j[key].get<int>();
}

std::string json_string(const json& j, const char* key, const std::string& where) {
  if (!j.contains(key) || !j[key].is_string()) {
    throw ParseError(where + ": missing string field '" + key + "'");
  }
  return j[key].get<std::string>();
}

const json& json_array(const json& j, const char* key, const std::string& where) {
  if (!j.contains(key) || !j[key].is_array()) {
    throw ParseError(where + ": missing array field '" + key + "'");
  }
  return j[key];
}

json parse_json_object(std::string_view line) {
  json j;
  try {
    j = json::parse(line);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
  if (!j.is_object()) throw ParseError("record is not a JSON object");
  return j;
}

// Fisher-Yates over a 64-bit Mersenne Twister; unlike std::shuffle the
// permutation is the same on every standard library.
template <typename T>
void seeded_shuffle(std::vector<T>& v, std::mt19937_64& rng) {
  for (std::size_t i = v.size(); i > 1; --i) {
    const std::size_t j = rng() % i;
    std::swap(v[i - 1], v[j]);
  }
}

}  // namespace

std::string_view to_string(Pos pos) {
  for (const auto& [p, s] : kPosNames) {
    if (p == pos) return s;
  }
  return "X";
}

std::optional<Pos> pos_from_string(std::string_view s) {
  for (const auto& [p, name] : kPosNames) {
    if (name == s) return p;
  }
  return std::nullopt;
}

std::string_view to_string(EntityLabel label) {
  for (const auto& [l, s] : kLabelNames) {
    if (l == label) return s;
  }
  return "?";
}

std::optional<EntityLabel> entity_label_from_string(std::string_view s) {
  for (const auto& [l, name] : kLabelNames) {
    if (name == s) return l;
  }
  return std::nullopt;
}

std::string AnnotatedDocument::span_text(int start, int end) const {
  if (start >= end) return {};
  const std::size_t b = tokens[start].char_begin;
  return text.substr(b, tokens[end - 1].char_end - b);
}

AnnotatedDocument make_document(std::string id, std::string text,
                                std::vector<Token> tokens,
                                std::vector<EntitySpan> entities,
                                std::vector<NounChunk> noun_chunks) {
  AnnotatedDocument doc{std::move(id), std::move(text), std::move(tokens),
                        std::move(entities), std::move(noun_chunks)};
  validate_tree(doc);
  align_tokens(doc);
  auto by_start = [](const auto& a, const auto& b) { return a.start < b.start; };
  std::stable_sort(doc.entities.begin(), doc.entities.end(), by_start);
  std::stable_sort(doc.noun_chunks.begin(), doc.noun_chunks.end(), by_start);
  validate_ranges(doc, doc.entities, "entity");
  validate_ranges(doc, doc.noun_chunks, "noun chunk");
  for (const auto& c : doc.noun_chunks) {
    if (!c.contains(c.root)) {
      invalid(doc.id, "noun chunk [" + std::to_string(c.start) + ", " +
                          std::to_string(c.end) + ") has its root outside");
    }
  }
  for (auto& e : doc.entities) e.text = doc.span_text(e.start, e.end);
  return doc;
}

AnnotatedDocument parse_document(std::string_view line) {
  const json j = parse_json_object(line);
  const std::string id = json_string(j, "id", "document");
  const std::string where = "document '" + id + "'";
  std::string text = json_string(j, "text", where);

  std::vector<Token> tokens;
  for (const auto& jt : json_array(j, "tokens", where)) {
    Token t;
    t.index = json_int(jt, "i", where);
    t.text = json_string(jt, "text", where);
    t.lemma = json_string(jt, "lemma", where);
    const std::string pos = json_string(jt, "pos", where);
    const auto p = pos_from_string(pos);
    if (!p) throw ValidationError(where + ": unknown part of speech '" + pos + "'");
    t.pos = *p;
    t.dep = json_string(jt, "dep", where);
    t.head = json_int(jt, "head", where);
    t.sentence = json_int(jt, "sent", where);
    tokens.push_back(std::move(t));
  }

  std::vector<EntitySpan> entities;
  for (const auto& je : json_array(j, "entities", where)) {
    EntitySpan e;
    e.start = json_int(je, "start", where);
    e.end = json_int(je, "end", where);
    const std::string label = json_string(je, "label", where);
    const auto l = entity_label_from_string(label);
    if (!l) throw ValidationError(where + ": unknown entity label '" + label + "'");
    e.label = *l;
    entities.push_back(std::move(e));
  }

  std::vector<NounChunk> chunks;
  for (const auto& jc : json_array(j, "noun_chunks", where)) {
    chunks.push_back({json_int(jc, "start", where), json_int(jc, "end", where),
                      json_int(jc, "root", where)});
  }
  return make_document(id, std::move(text), std::move(tokens),
                       std::move(entities), std::move(chunks));
}

std::string document_to_json_line(const AnnotatedDocument& doc) {
  nlohmann::ordered_json j;
  j["id"] = doc.id;
  j["text"] = doc.text;
  auto& tokens = j["tokens"] = nlohmann::ordered_json::array();
  for (const auto& t : doc.tokens) {
    nlohmann::ordered_json jt;
    jt["i"] = t.index;
    jt["text"] = t.text;
    jt["lemma"] = t.lemma;
    jt["pos"] = to_string(t.pos);
    jt["dep"] = t.dep;
    jt["head"] = t.head;
    jt["sent"] = t.sentence;
    tokens.push_back(std::move(jt));
  }
  auto& entities = j["entities"] = nlohmann::ordered_json::array();
  for (const auto& e : doc.entities) {
    entities.push_back({{"start", e.start}, {"end", e.end}, {"label", to_string(e.label)}});
  }
  auto& chunks = j["noun_chunks"] = nlohmann::ordered_json::array();
  for (const auto& c : doc.noun_chunks) {
    chunks.push_back({{"start", c.start}, {"end", c.end}, {"root", c.root}});
  }
  return j.dump();
}

std::vector<AnnotatedDocument> load_documents(const std::string& path) {
  std::vector<AnnotatedDocument> docs;
  for_each_line(path, [&](std::string_view line, std::size_t number) {
    if (text::trim(line).empty()) return;
    try {
      docs.push_back(parse_document(line));
    } catch (const ParseError& e) {
      throw ParseError(e.what(), number);
    }
  });
  return docs;
}

GoldExample parse_gold_line(std::string_view line) {
  const json j = parse_json_object(line);
  GoldExample g;
  g.id = json_string(j, "id", "gold example");
  g.input_text = json_string(j, "input_text", "gold example '" + g.id + "'");
  g.target_text = json_string(j, "target_text", "gold example '" + g.id + "'");
  if (!g.target_text.empty()) {
    try {
      parse_records(g.target_text);
    } catch (const Error& e) {
      throw ParseError("gold example '" + g.id + "' target: " + e.what());
    }
  }
  return g;
}

std::string gold_to_json_line(const GoldExample& g) {
  nlohmann::ordered_json j;
  j["id"] = g.id;
  j["input_text"] = g.input_text;
  j["target_text"] = g.target_text;
  return j.dump();
}

std::vector<GoldExample> load_gold(const std::string& path) {
  std::vector<GoldExample> out;
  for_each_line(path, [&](std::string_view line, std::size_t number) {
    if (text::trim(line).empty()) return;
    try {
      out.push_back(parse_gold_line(line));
    } catch (const ParseError& e) {
      throw ParseError(e.what(), number);
    }
  });
  return out;
}

SplitResult split_train_test(const std::vector<GoldExample>& gold,
                             double test_fraction, std::uint64_t seed) {
  if (!(test_fraction > 0.0 && test_fraction < 1.0)) {
    throw ArgumentError("test fraction must lie in (0, 1), got " +
                        std::to_string(test_fraction));
  }
  if (gold.empty()) throw ArgumentError("cannot split an empty corpus");

  const std::size_t n = gold.size();
  std::vector<std::vector<std::string>> info(n);
  // key -> examples whose information contains it; a superset of x must
  // contain x's first key.
  std::map<std::string, std::vector<std::size_t>> holders;
  for (std::size_t i = 0; i < n; ++i) {
    if (!gold[i].informative()) continue;
    info[i] = information_content(parse_records(gold[i].target_text));
    for (const auto& key : info[i]) {
      auto& h = holders[key];
      if (h.empty() || h.back() != i) h.push_back(i);
    }
  }

  SplitResult result;
  result.requested_test_size =
      static_cast<std::size_t>(std::llround(test_fraction * static_cast<double>(n)));

  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  std::mt19937_64 rng(seed);
  seeded_shuffle(order, rng);

  std::vector<bool> in_test(n, false);
  auto eligible = [&](std::size_t x) {
    if (info[x].empty()) return true;
    for (std::size_t y : holders[info[x].front()]) {
      if (y == x || in_test[y]) continue;
      if (std::includes(info[y].begin(), info[y].end(), info[x].begin(),
                        info[x].end())) {
        return false;
      }
    }
    return true;
  };

  std::size_t taken = 0;
  bool progress = true;
  while (taken < result.requested_test_size && progress) {
    progress = false;
    for (std::size_t x : order) {
      if (taken == result.requested_test_size) break;
      if (in_test[x] || !eligible(x)) continue;
      in_test[x] = true;
      ++taken;
      progress = true;
    }
  }

  if (taken < result.requested_test_size) {
    if (taken == 0) {
      throw Error("deduplication leaves no example eligible for the test set");
    }
    result.shortfall = true;
    spdlog::warn("test set holds {} of {} requested examples after deduplication",
                 taken, result.requested_test_size);
  }
  for (std::size_t i = 0; i < n; ++i) {
    (in_test[i] ? result.test : result.train).push_back(gold[i]);
  }
  return result;
}

BalancedSubset balanced_subset(const std::vector<GoldExample>& train,
                               std::uint64_t seed) {
  std::vector<std::size_t> empty;
  std::size_t informative = 0;
  for (std::size_t i = 0; i < train.size(); ++i) {
    if (train[i].informative()) {
      ++informative;
    } else {
      empty.push_back(i);
    }
  }
  if (informative == 0) {
    throw ArgumentError("balanced subset needs at least one informative example");
  }

  BalancedSubset out;
  out.informative = informative;
  out.empty = std::min(informative, empty.size());
  out.shortfall = empty.size() < informative;
  if (out.shortfall) {
    spdlog::warn("only {} empty examples available to balance {} informative ones",
                 empty.size(), informative);
  }

  std::mt19937_64 rng(seed);
  seeded_shuffle(empty, rng);
  std::vector<bool> keep(train.size(), false);
  for (std::size_t k = 0; k < out.empty; ++k) keep[empty[k]] = true;
  for (std::size_t i = 0; i < train.size(); ++i) {
    if (train[i].informative() || keep[i]) out.examples.push_back(train[i]);
  }
  return out;
}

}  // namespace finrel
