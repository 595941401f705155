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

#include "finrel/deptree.h"

#include <algorithm>

namespace finrel {

TreeView::TreeView(const AnnotatedDocument& doc)
    : doc_(&doc),
      children_(doc.tokens.size()),
      entity_index_(doc.tokens.size(), -1),
      chunk_index_(doc.tokens.size(), -1) {
  for (const auto& tok : doc.tokens) {
    if (tok.head != tok.index) children_[tok.head].push_back(tok.index);
  }
  for (std::size_t k = 0; k < doc.entities.size(); ++k) {
    for (int t = doc.entities[k].start; t < doc.entities[k].end; ++t) {
      entity_index_[t] = static_cast<int>(k);
    }
  }
  for (std::size_t k = 0; k < doc.noun_chunks.size(); ++k) {
    for (int t = doc.noun_chunks[k].start; t < doc.noun_chunks[k].end; ++t) {
      chunk_index_[t] = static_cast<int>(k);
    }
  }
}

std::vector<int> TreeView::ancestors(int t) const {
  std::vector<int> out;
  while (!is_root(t)) {
    t = head(t);
    out.push_back(t);
  }
  return out;
}

std::vector<int> TreeView::left_ancestors(int t) const {
  std::vector<int> out;
  for (int a : ancestors(t)) {
    if (a < t) out.push_back(a);
  }
  return out;
}

std::vector<int> TreeView::descendants(int t) const {
  std::vector<int> out;
  std::vector<int> stack(children_[t].begin(), children_[t].end());
  while (!stack.empty()) {
    const int c = stack.back();
    stack.pop_back();
    out.push_back(c);
    stack.insert(stack.end(), children_[c].begin(), children_[c].end());
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<int> TreeView::left_subtree(int t) const {
  std::vector<int> out = descendants(t);
  out.erase(std::find_if(out.begin(), out.end(), [t](int d) { return d > t; }),
            out.end());
  return out;
}

std::vector<int> TreeView::right_subtree(int t) const {
  std::vector<int> out = descendants(t);
  out.erase(out.begin(),
            std::find_if(out.begin(), out.end(), [t](int d) { return d > t; }));
  return out;
}

bool TreeView::dominates(int ancestor, int t) const {
  while (!is_root(t)) {
    t = head(t);
    if (t == ancestor) return true;
  }
  return false;
}

std::optional<int> TreeView::governing_verb(int t) const {
  for (int a : ancestors(t)) {
    const Pos p = token(a).pos;
    if (p == Pos::kVerb || p == Pos::kAux) return a;
  }
  return std::nullopt;
}

const NounChunk* TreeView::noun_chunk_of(int t) const {
  const int k = chunk_index_[t];
  return k < 0 ? nullptr : &doc_->noun_chunks[k];
}

const EntitySpan* TreeView::entity_at(int t) const {
  const int k = entity_index_[t];
  return k < 0 ? nullptr : &doc_->entities[k];
}

int TreeView::entity_root(const EntitySpan& e) const {
  for (int t = e.start; t < e.end; ++t) {
    if (!e.contains(head(t)) || is_root(t)) return t;
  }
  return e.end - 1;
}

}  // namespace finrel
