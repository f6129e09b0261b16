// Copyright 2026 The ckge Authors. All Rights Reserved.
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

#include "ckge/commonsense.h"

#include <algorithm>
#include <ostream>

#include "ckge/knowledge_graph.h"

namespace ckge {
namespace {

std::uint64_t ConceptRelationKey(ConceptId c, RelationId r) {
  return (static_cast<std::uint64_t>(c.value()) << 16) |
         static_cast<std::uint64_t>(r.value());
}

std::span<const ConceptId> Lookup(
    const std::unordered_map<std::uint64_t, std::vector<ConceptId>>& index,
    std::uint64_t key) {
  auto it = index.find(key);
  if (it == index.end()) return {};
  return it->second;
}

void SortUnique(std::vector<ConceptId>& v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

}  // namespace

std::vector<ConceptTriple> AbstractTriple(const Triple& t,
                                          const KnowledgeGraph& kg) {
  std::vector<ConceptTriple> out;
  const auto heads = kg.ConceptsOf(t.head);
  const auto tails = kg.ConceptsOf(t.tail);
  out.reserve(heads.size() * tails.size());
  for (const ConceptId ch : heads) {
    for (const ConceptId ct : tails) {
      out.push_back(ConceptTriple{ch, t.relation, ct});
    }
  }
  return out;
}

CommonsenseStore BuildCommonsense(const KnowledgeGraph& kg) {
  CommonsenseStore cs;
  for (const Triple& t : kg.train()) {
    auto abstracted = AbstractTriple(t, kg);
    cs.c1_.insert(cs.c1_.end(), abstracted.begin(), abstracted.end());
  }
  std::sort(cs.c1_.begin(), cs.c1_.end());
  cs.c1_.erase(std::unique(cs.c1_.begin(), cs.c1_.end()), cs.c1_.end());

  cs.c2_.resize(kg.num_relations());
  for (const ConceptTriple& ct : cs.c1_) {
    auto& sets = cs.c2_[ct.relation.index()];
    sets.head_concepts.push_back(ct.head);
    sets.tail_concepts.push_back(ct.tail);
    cs.tails_by_head_[ConceptRelationKey(ct.head, ct.relation)].push_back(
        ct.tail);
    cs.heads_by_tail_[ConceptRelationKey(ct.tail, ct.relation)].push_back(
        ct.head);
  }
  for (auto& sets : cs.c2_) {
    SortUnique(sets.head_concepts);
    SortUnique(sets.tail_concepts);
  }
  for (auto& [key, list] : cs.tails_by_head_) SortUnique(list);
  for (auto& [key, list] : cs.heads_by_tail_) SortUnique(list);
  return cs;
}

bool CommonsenseStore::Contains(const ConceptTriple& ct) const {
  return std::binary_search(c1_.begin(), c1_.end(), ct);
}

const RelationConceptSets& CommonsenseStore::SetsFor(RelationId r) const {
  static const RelationConceptSets kEmpty;
  if (!r.valid() || r.index() >= c2_.size()) return kEmpty;
  return c2_[r.index()];
}

bool CommonsenseStore::HasRelation(RelationId r) const {
  return !SetsFor(r).head_concepts.empty();
}

std::span<const ConceptId> CommonsenseStore::TailConceptsFor(
    ConceptId head_concept, RelationId r) const {
  return Lookup(tails_by_head_, ConceptRelationKey(head_concept, r));
}

std::span<const ConceptId> CommonsenseStore::HeadConceptsFor(
    RelationId r, ConceptId tail_concept) const {
  return Lookup(heads_by_tail_, ConceptRelationKey(tail_concept, r));
}

void WriteIndividualForm(const CommonsenseStore& cs, const KnowledgeGraph& kg,
                         std::ostream& out) {
  for (const ConceptTriple& ct : cs.individual()) {
    out << kg.concepts().label(ct.head) << '\t'
        << kg.relations().label(ct.relation) << '\t'
        << kg.concepts().label(ct.tail) << '\n';
  }
}

void WriteSetForm(const CommonsenseStore& cs, const KnowledgeGraph& kg,
                  std::ostream& out) {
  for (std::size_t r = 0; r < kg.num_relations(); ++r) {
    const RelationId rel(static_cast<std::int32_t>(r));
    if (!cs.HasRelation(rel)) continue;
    const auto& sets = cs.SetsFor(rel);
    const auto& label = kg.relations().label(rel);
    out << label << "\thead";
    for (const ConceptId c : sets.head_concepts) {
      out << '\t' << kg.concepts().label(c);
    }
    out << '\n' << label << "\ttail";
    for (const ConceptId c : sets.tail_concepts) {
      out << '\t' << kg.concepts().label(c);
    }
    out << '\n';
  }
}

}  // namespace ckge
