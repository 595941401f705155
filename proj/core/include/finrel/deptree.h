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

#ifndef FINREL_DEPTREE_H_
#define FINREL_DEPTREE_H_

#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "finrel/corpus.h"

namespace finrel {

// Read-only navigation over a validated document's dependency tree. The
// view borrows the document, which must outlive it.
class TreeView {
 public:
  explicit TreeView(const AnnotatedDocument& doc);

  const AnnotatedDocument& document() const { return *doc_; }
  int size() const { return doc_->size(); }
  const Token& token(int t) const { return doc_->tokens[t]; }
  int head(int t) const { return doc_->tokens[t].head; }
  bool is_root(int t) const { return head(t) == t; }

  // Direct dependents of t in ascending order.
  std::span<const int> children(int t) const { return children_[t]; }

  // Head chain from t's head up to and including the sentence ROOT.
  std::vector<int> ancestors(int t) const;

  // Ancestors with a smaller index than t, nearest first.
  std::vector<int> left_ancestors(int t) const;

  // Descendants of t (t excluded) in document order.
  std::vector<int> descendants(int t) const;
  std::vector<int> left_subtree(int t) const;
  std::vector<int> right_subtree(int t) const;
  bool dominates(int ancestor, int t) const;

  // Nearest strict ancestor tagged VERB or AUX.
  std::optional<int> governing_verb(int t) const;

  const NounChunk* noun_chunk_of(int t) const;
  const EntitySpan* entity_at(int t) const;

  // Token of e whose head lies outside e; the last token of e when every
  // head is internal.
  int entity_root(const EntitySpan& e) const;

  bool dep_is(int t, std::string_view label) const {
    return doc_->tokens[t].dep == label;
  }
  bool is_subject(int t) const {
    return dep_is(t, "nsubj") || dep_is(t, "nsubjpass");
  }
  bool is_direct_object(int t) const {
    return dep_is(t, "dobj") || dep_is(t, "obj");
  }
  bool is_attr(int t) const { return dep_is(t, "attr"); }
  bool is_prepositional_object(int t) const { return dep_is(t, "pobj"); }
  bool is_preposition(int t) const { return dep_is(t, "prep"); }

  bool same_sentence(int a, int b) const {
    return token(a).sentence == token(b).sentence;
  }

 private:
  const AnnotatedDocument* doc_;
  std::vector<std::vector<int>> children_;
  std::vector<int> entity_index_;  // -1 outside entities
  std::vector<int> chunk_index_;   // -1 outside chunks
};

}  // namespace finrel

#endif  // FINREL_DEPTREE_H_
