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

#include "finrel/relex.h"

#include <algorithm>
#include <cstdlib>
#include <set>
#include <tuple>

#include <spdlog/spdlog.h>

#include "finrel/error.h"

namespace finrel {
namespace {

bool is_verbal(const TreeView& view, int t) {
  const Pos p = view.token(t).pos;
  return p == Pos::kVerb || p == Pos::kAux;
}

bool has_label(const EntitySpan* e, EntityLabel label) {
  return e != nullptr && e->label == label;
}

// Nearest span to `anchor` by root distance; lower start on ties.
const EntitySpan* nearest(const TreeView& view,
                          const std::vector<const EntitySpan*>& spans,
                          int anchor) {
  const EntitySpan* best = nullptr;
  int best_distance = 0;
  for (const EntitySpan* e : spans) {
    const int d = std::abs(view.entity_root(*e) - anchor);
    if (best == nullptr || d < best_distance ||
        (d == best_distance && e->start < best->start)) {
      best = e;
      best_distance = d;
    }
  }
  return best;
}

// Companies among the children of `verb`, deduplicated, document order.
std::vector<const EntitySpan*> companies_under(const TreeView& view, int verb) {
  std::vector<const EntitySpan*> out;
  for (int c : view.children(verb)) {
    const EntitySpan* org = company_at(view, c);
    if (org != nullptr && std::find(out.begin(), out.end(), org) == out.end()) {
      out.push_back(org);
    }
  }
  return out;
}

std::string chunk_text(const TreeView& view, int t) {
  if (const NounChunk* c = view.noun_chunk_of(t)) {
    return view.document().span_text(c->start, c->end);
  }
  return view.token(t).text;
}

// Function of a MONEY root; a conjunct shares the function of its first
// conjunct.
int role_token(const TreeView& view, int t) {
  int guard = view.size();
  while (view.dep_is(t, "conj") && !view.is_root(t) && guard-- > 0) {
    t = view.head(t);
  }
  return t;
}

std::optional<int> find_subject(const TreeView& view, int t) {
  for (int a : view.left_ancestors(t)) {
    if (view.is_subject(a)) return a;
    for (int c : view.children(a)) {
      if (view.is_subject(c)) return c;
    }
  }
  return std::nullopt;
}

PairwiseRelation make_relation(RelationKind kind, const EntitySpan& left,
                               const EntitySpan& right, std::string rule) {
  return PairwiseRelation{kind, left, right, std::nullopt, std::move(rule)};
}

// Tokens covered by the noun chunks of r and of r's appositions, plus every
// prepositional subtree hanging off those chunks' roots.
std::vector<bool> attachment_region(const TreeView& view, int r) {
  std::vector<bool> in(view.size(), false);
  std::vector<int> heads{r};
  for (int c : view.children(r)) {
    if (view.dep_is(c, "appos")) heads.push_back(c);
  }
  for (int h : heads) {
    int chunk_root = h;
    if (const NounChunk* chunk = view.noun_chunk_of(h)) {
      for (int t = chunk->start; t < chunk->end; ++t) in[t] = true;
      chunk_root = chunk->root;
    }
    in[h] = true;
    for (int p : view.children(chunk_root)) {
      if (!view.is_preposition(p)) continue;
      in[p] = true;
      for (int d : view.descendants(p)) in[d] = true;
    }
  }
  return in;
}

struct PairRule {
  RelationKind kind;
  EntityLabel anchor;
  EntityLabel partner;
  bool anchor_is_left;
};

constexpr PairRule kPairRules[] = {
    {RelationKind::kCompanyCountry, EntityLabel::kGpe, EntityLabel::kOrg, false},
    {RelationKind::kCompanyPerson, EntityLabel::kPerson, EntityLabel::kOrg, false},
    {RelationKind::kMoneyDate, EntityLabel::kMoney, EntityLabel::kDate, true},
    {RelationKind::kPersonCountry, EntityLabel::kPerson, EntityLabel::kGpe, true},
};

void append_words_outside_entities(const TreeView& view, int start, int end,
                                   std::string& out) {
  for (int t = start; t < end; ++t) {
    if (view.entity_at(t) != nullptr) continue;
    if (!out.empty()) out += ' ';
    out += view.token(t).text;
  }
}

void append_chunk_words(const TreeView& view, int t, std::string& out) {
  if (const NounChunk* c = view.noun_chunk_of(t)) {
    append_words_outside_entities(view, c->start, c->end, out);
  } else {
    append_words_outside_entities(view, t, t + 1, out);
  }
}

// Words around a person mention that say what the person is: its own noun
// chunk, appositions in either direction, a copular attribute, and the
// governing verb.
std::string person_context(const TreeView& view, const EntitySpan& person) {
  const int p = view.entity_root(person);
  std::string out;
  append_chunk_words(view, p, out);
  for (int c : view.children(p)) {
    if (view.dep_is(c, "appos")) append_chunk_words(view, c, out);
  }
  if (view.dep_is(p, "appos")) append_chunk_words(view, view.head(p), out);
  if (!view.is_root(p) && view.token(view.head(p)).pos == Pos::kAux) {
    for (int c : view.children(view.head(p))) {
      if (view.is_attr(c)) append_chunk_words(view, c, out);
    }
  }
  if (const auto verb = view.governing_verb(p)) {
    if (!out.empty()) out += ' ';
    out += view.token(*verb).text;
  }
  return out;
}

}  // namespace

std::string_view to_string(RelationKind kind) {
  switch (kind) {
    case RelationKind::kCompanyMoney:
      return "company-money";
    case RelationKind::kCompanyDate:
      return "company-date";
    case RelationKind::kCompanyCountry:
      return "company-country";
    case RelationKind::kCompanyPerson:
      return "company-person";
    case RelationKind::kMoneyDate:
      return "money-date";
    case RelationKind::kPersonCountry:
      return "person-country";
  }
  return "?";
}

const EntitySpan* company_at(const TreeView& view, int t) {
  const EntitySpan* e = view.entity_at(t);
  if (has_label(e, EntityLabel::kOrg)) return e;
  std::vector<const EntitySpan*> hops;
  for (int c : view.children(t)) {
    if (!view.dep_is(c, "appos") && !view.dep_is(c, "conj")) continue;
    const EntitySpan* org = view.entity_at(c);
    if (has_label(org, EntityLabel::kOrg)) hops.push_back(org);
  }
  return nearest(view, hops, t);
}

std::vector<PairwiseRelation> relate_money_company(const TreeView& view) {
  std::vector<PairwiseRelation> out;
  for (const EntitySpan& money : view.document().entities) {
    if (money.label != EntityLabel::kMoney) continue;
    const int t = view.entity_root(money);
    const int r = role_token(view, t);

    if (view.is_attr(r) || view.is_direct_object(r)) {
      const auto verb = view.governing_verb(r);
      std::string bridge = verb ? view.token(*verb).text + " " : std::string();
      bridge += chunk_text(view, t);

      if (const auto subject = find_subject(view, r)) {
        if (const EntitySpan* org = company_at(view, *subject)) {
          PairwiseRelation rel = make_relation(RelationKind::kCompanyMoney, *org,
                                               money, "money-company/a");
          rel.bridge_phrase = std::move(bridge);
          out.push_back(std::move(rel));
        }
        continue;
      }
      if (!verb) continue;
      if (const EntitySpan* org = nearest(view, companies_under(view, *verb), t)) {
        PairwiseRelation rel = make_relation(RelationKind::kCompanyMoney, *org,
                                             money, "money-company/b");
        rel.bridge_phrase = std::move(bridge);
        out.push_back(std::move(rel));
      }
    } else if (view.is_prepositional_object(r)) {
      const int prep = view.head(r);
      if (view.is_root(prep)) continue;
      const int prep_head = view.head(prep);
      const auto verb = is_verbal(view, prep_head)
                            ? std::optional<int>(prep_head)
                            : view.governing_verb(prep_head);
      if (!verb) continue;
      if (const EntitySpan* org = nearest(view, companies_under(view, *verb), t)) {
        PairwiseRelation rel = make_relation(RelationKind::kCompanyMoney, *org,
                                             money, "money-company/c");
        rel.bridge_phrase = chunk_text(view, prep_head);
        out.push_back(std::move(rel));
      }
    }
  }
  return out;
}

std::vector<PairwiseRelation> relate_company_date(const TreeView& view) {
  std::vector<PairwiseRelation> out;
  for (const EntitySpan& org : view.document().entities) {
    if (org.label != EntityLabel::kOrg) continue;
    const int c = view.entity_root(org);
    // DATE span -> first rule that found it.
    std::vector<std::pair<const EntitySpan*, const char*>> found;
    auto take = [&](int t, const char* rule) {
      const EntitySpan* e = view.entity_at(t);
      if (!has_label(e, EntityLabel::kDate)) return;
      for (const auto& f : found) {
        if (f.first == e) return;
      }
      found.emplace_back(e, rule);
    };

    for (int p : view.descendants(c)) {
      if (!view.is_preposition(p)) continue;
      for (int ch : view.children(p)) take(ch, "company-date/a");
    }
    if (view.is_direct_object(c) || view.is_subject(c)) {
      if (const auto verb = view.governing_verb(c)) {
        for (int ch : view.children(*verb)) {
          take(ch, "company-date/b");
          if (view.is_preposition(ch)) {
            for (int g : view.children(ch)) take(g, "company-date/b");
          }
        }
      }
    }
    if (view.is_prepositional_object(c) && !view.is_root(view.head(c))) {
      const int prep = view.head(c);
      const int prep_head = view.head(prep);
      if (view.token(prep_head).pos == Pos::kPropn) {
        for (int d : view.descendants(prep_head)) take(d, "company-date/c");
      }
      if (const auto verb = view.governing_verb(prep)) {
        for (int d : view.descendants(*verb)) take(d, "company-date/c");
      }
    }

    std::sort(found.begin(), found.end(), [](const auto& a, const auto& b) {
      return a.first->start < b.first->start;
    });
    for (const auto& [date, rule] : found) {
      out.push_back(make_relation(RelationKind::kCompanyDate, org, *date, rule));
    }
  }
  return out;
}

std::vector<PairwiseRelation> relate_other_pairs(const TreeView& view) {
  const auto& entities = view.document().entities;
  std::vector<int> roots;
  roots.reserve(entities.size());
  for (const auto& e : entities) roots.push_back(view.entity_root(e));

  std::vector<std::vector<bool>> regions;
  regions.reserve(entities.size());
  for (int r : roots) regions.push_back(attachment_region(view, r));

  std::vector<PairwiseRelation> out;
  for (const PairRule& rule : kPairRules) {
    for (std::size_t a = 0; a < entities.size(); ++a) {
      if (entities[a].label != rule.anchor) continue;
      const int ra = roots[a];
      const auto verb_a = view.governing_verb(ra);

      const EntitySpan* best = nullptr;
      int best_distance = 0;
      const char* best_rule = nullptr;
      for (std::size_t p = 0; p < entities.size(); ++p) {
        if (entities[p].label != rule.partner) continue;
        const int rp = roots[p];
        if (!view.same_sentence(ra, rp)) continue;
        const char* how = nullptr;
        if (regions[a][rp] || regions[p][ra]) {
          how = "chunk";
        } else if (verb_a && view.governing_verb(rp) == verb_a) {
          how = "shared-governor";
        }
        if (how == nullptr) continue;
        const int d = std::abs(ra - rp);
        if (best == nullptr || d < best_distance ||
            (d == best_distance && entities[p].start < best->start)) {
          best = &entities[p];
          best_distance = d;
          best_rule = how;
        }
      }
      if (best == nullptr) continue;
      const std::string label = std::string(to_string(rule.kind)) + "/" + best_rule;
      out.push_back(rule.anchor_is_left
                        ? make_relation(rule.kind, entities[a], *best, label)
                        : make_relation(rule.kind, *best, entities[a], label));
    }
  }
  return out;
}

std::vector<RelationRecord> extract(const TreeView& view,
                                    const EmbeddingTable& table,
                                    const LexiconConfig& lexicon,
                                    ExtractTrace* trace) {
  std::vector<PairwiseRelation> relations = relate_money_company(view);
  {
    auto dates = relate_company_date(view);
    auto others = relate_other_pairs(view);
    relations.insert(relations.end(), dates.begin(), dates.end());
    relations.insert(relations.end(), others.begin(), others.end());
  }

  auto note = [&](std::string line) {
    if (trace != nullptr) trace->decisions.push_back(std::move(line));
  };

  struct Keyed {
    int company_root;
    int value_start;
    std::size_t seq;
    RelationRecord record;
  };
  std::vector<Keyed> keyed;

  auto emit = [&](const EntitySpan& company, VariableName variable,
                  const EntitySpan& value, std::string_view date) {
    try {
      keyed.push_back({view.entity_root(company), value.start, keyed.size(),
                       RelationRecord(company.text, variable, value.text, date)});
    } catch (const ValidationError& e) {
      spdlog::warn("document '{}': record dropped: {}", view.document().id, e.what());
      note(std::string("dropped: ") + e.what());
    }
  };

  for (const PairwiseRelation& rel : relations) {
    switch (rel.kind) {
      case RelationKind::kCompanyMoney: {
        const std::string& phrase = *rel.bridge_phrase;
        const MoneyVerdict verdict =
            classify_money_phrase_verbose(table, lexicon, phrase);
        note("money '" + rel.right.text + "' phrase '" + phrase + "' -> " +
             std::string(to_string(verdict.label)) +
             (verdict.best.word.empty()
                  ? std::string()
                  : " (" + verdict.best.word + " " +
                        std::to_string(verdict.best.similarity) + ")"));
        if (verdict.label == MoneyClass::kUnknown) break;

        const int money_root = view.entity_root(rel.right);
        std::vector<const EntitySpan*> dates;
        for (const PairwiseRelation& other : relations) {
          const bool same_money = other.kind == RelationKind::kMoneyDate &&
                                  other.left == rel.right;
          const bool same_company = other.kind == RelationKind::kCompanyDate &&
                                    other.left == rel.left;
          if (same_money || same_company) dates.push_back(&other.right);
        }
        const EntitySpan* date = nearest(view, dates, money_root);
        emit(rel.left,
             verdict.label == MoneyClass::kRevenue ? VariableName::kRevenue
                                                   : VariableName::kInvestment,
             rel.right, date != nullptr ? std::string_view(date->text) : kUnknownDate);
        break;
      }
      case RelationKind::kCompanyPerson: {
        const std::string context = person_context(view, rel.right);
        const PersonVerdict verdict =
            classify_person_phrase_verbose(table, lexicon, rel.right.text, context);
        note("person '" + rel.right.text + "' context '" + context + "' -> " +
             std::string(to_string(verdict.label)));
        if (verdict.label == PersonClass::kFounder) {
          emit(rel.left, VariableName::kFounder, rel.right, kUnknownDate);
        }
        break;
      }
      case RelationKind::kCompanyCountry:
        emit(rel.left, VariableName::kCountry, rel.right, kUnknownDate);
        break;
      default:
        break;
    }
  }

  std::stable_sort(keyed.begin(), keyed.end(), [](const Keyed& a, const Keyed& b) {
    return std::tie(a.company_root, a.value_start, a.seq) <
           std::tie(b.company_root, b.value_start, b.seq);
  });
  std::vector<RelationRecord> records;
  for (auto& k : keyed) {
    if (std::find(records.begin(), records.end(), k.record) == records.end()) {
      records.push_back(std::move(k.record));
    }
  }
  if (trace != nullptr) trace->relations = std::move(relations);
  return records;
}

}  // namespace finrel
