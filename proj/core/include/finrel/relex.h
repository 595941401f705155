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

#ifndef FINREL_RELEX_H_
#define FINREL_RELEX_H_

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "finrel/corpus.h"
#include "finrel/deptree.h"
#include "finrel/records.h"
#include "finrel/semvec.h"

namespace finrel {

enum class RelationKind {
  kCompanyMoney,
  kCompanyDate,
  kCompanyCountry,
  kCompanyPerson,
  kMoneyDate,
  kPersonCountry,
};

std::string_view to_string(RelationKind kind);

// left/right labels per kind: company-* puts the ORG on the left,
// money-date is (MONEY, DATE), person-country is (PERSON, GPE).
struct PairwiseRelation {
  RelationKind kind;
  EntitySpan left;
  EntitySpan right;
  // Noun phrase naming a monetary variable; company-money only.
  std::optional<std::string> bridge_phrase;
  // Heuristic branch that produced the pair, e.g. "money-company/c".
  std::string rule;
};

// ORG span at token t, or reached from t over one appos/conj edge (nearest
// such dependent first).
const EntitySpan* company_at(const TreeView& view, int t);

// One relation per MONEY entity at most:
//  a) MONEY root is attr/dobj: the first subject found at or under a left
//     ancestor; related when that subject is a company.
//  b) (a) found no subject: companies among the governing verb's children.
//  c) MONEY root is pobj: the preposition head's noun chunk becomes the
//     monetary variable; companies among the children of that head's
//     governing verb.
std::vector<PairwiseRelation> relate_money_company(const TreeView& view);

// For every ORG root c, collects DATE spans from
//  a) the children of prepositions in c's left and right subtrees;
//  b) when c is a direct object or subject, the governing verb's children,
//     looking one preposition deep;
//  c) when c is a prepositional object, the descendants of the preposition
//     head (proper nouns only) and of the preposition's governing verb.
// Each (ORG, DATE) pair is emitted once.
std::vector<PairwiseRelation> relate_company_date(const TreeView& view);

// company-country, company-person, money-date and person-country. Two
// entities of the right labels in one sentence relate when one's root lies
// in the other's noun chunk or in a prepositional subtree of that chunk
// (appositions of the root included), or when both roots share their
// governing verb. Each GPE (company-country), PERSON (company-person,
// person-country) or MONEY (money-date) keeps only its nearest partner.
std::vector<PairwiseRelation> relate_other_pairs(const TreeView& view);

struct ExtractTrace {
  std::vector<PairwiseRelation> relations;
  std::vector<std::string> decisions;  // one line per classifier decision
};

// Integrates every pairwise relation of the paragraph into records ordered
// by company root, then value start. company-money becomes revenue or
// investment through the money classifier (unknown drops the pair) and
// takes the nearest date related to the money or its company.
// company-person becomes founder only on a founder verdict. company-country
// becomes country. trace, when given, receives the intermediate results.
std::vector<RelationRecord> extract(const TreeView& view,
                                    const EmbeddingTable& table,
                                    const LexiconConfig& lexicon,
                                    ExtractTrace* trace = nullptr);

}  // namespace finrel

#endif  // FINREL_RELEX_H_
