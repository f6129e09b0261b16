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

#ifndef CKGE_COMMONSENSE_H_
#define CKGE_COMMONSENSE_H_

#include <compare>
#include <iosfwd>
#include <span>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "ckge/ids.h"

namespace ckge {

class KnowledgeGraph;

// A concept-level triple (c_h, r, c_t): one member of the individual form.
struct ConceptTriple {
  ConceptId head;
  RelationId relation;
  ConceptId tail;

  friend constexpr bool operator==(const ConceptTriple&,
                                   const ConceptTriple&) = default;
  friend constexpr auto operator<=>(const ConceptTriple&,
                                    const ConceptTriple&) = default;
};

// Set form for one relation: every head concept and every tail concept
// seen with it, kept as two independent sorted sets.
struct RelationConceptSets {
  std::vector<ConceptId> head_concepts;
  std::vector<ConceptId> tail_concepts;
};

// Commonsense abstracted from the train split.
//
// The individual form is a sorted, duplicate-free list of concept triples.
// The set form merges it per relation. Two lookup indexes over the
// individual form answer "which tail concepts follow (c_h, r)" and the
// mirrored head question, which is what candidate filtering needs.
class CommonsenseStore {
 public:
  CommonsenseStore() = default;

  std::span<const ConceptTriple> individual() const { return c1_; }
  bool Contains(const ConceptTriple& ct) const;

  // Empty sets for relations never seen in train.
  const RelationConceptSets& SetsFor(RelationId r) const;
  bool HasRelation(RelationId r) const;
  std::size_t num_relations() const { return c2_.size(); }

  std::span<const ConceptId> TailConceptsFor(ConceptId head_concept,
                                             RelationId r) const;
  std::span<const ConceptId> HeadConceptsFor(RelationId r,
                                             ConceptId tail_concept) const;

 private:
  friend CommonsenseStore BuildCommonsense(const KnowledgeGraph& kg);

  std::vector<ConceptTriple> c1_;
  std::vector<RelationConceptSets> c2_;
  std::unordered_map<std::uint64_t, std::vector<ConceptId>> tails_by_head_;
  std::unordered_map<std::uint64_t, std::vector<ConceptId>> heads_by_tail_;
};

// Replaces both entities by their concepts: concepts(head) x {r} x
// concepts(tail).
std::vector<ConceptTriple> AbstractTriple(const Triple& t,
                                          const KnowledgeGraph& kg);

// Abstracts every train triple, drops repeats and merges per relation.
CommonsenseStore BuildCommonsense(const KnowledgeGraph& kg);

// c1.tsv: `head_concept<TAB>relation<TAB>tail_concept`, sorted by id.
void WriteIndividualForm(const CommonsenseStore& cs, const KnowledgeGraph& kg,
                         std::ostream& out);

// c2.txt: two lines per relation in relation-id order,
//   `relation<TAB>head<TAB>concept<TAB>concept...`
//   `relation<TAB>tail<TAB>concept<TAB>concept...`
void WriteSetForm(const CommonsenseStore& cs, const KnowledgeGraph& kg,
                  std::ostream& out);

}  // namespace ckge

#endif  // CKGE_COMMONSENSE_H_
