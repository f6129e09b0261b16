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

#ifndef CKGE_KNOWLEDGE_GRAPH_H_
#define CKGE_KNOWLEDGE_GRAPH_H_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "ckge/dataset.h"
#include "ckge/ids.h"
#include "ckge/vocabulary.h"

namespace ckge {

// Concept assigned to entities that have no line in entity2concept.txt.
inline constexpr const char* kSentinelConcept = "__UNK__";

struct GraphBuildStats {
  // Exact repeats of an `entity<TAB>concept` line.
  std::size_t duplicate_concept_lines = 0;
  // Concept lines naming an entity that occurs in no split.
  std::size_t unused_concept_lines = 0;
  // Entities that received the sentinel concept.
  std::size_t sentinel_entities = 0;
  // Entities that occur in valid/test but not in train.
  std::size_t eval_only_entities = 0;
};

// Adjacency index: packed (entity, relation) -> sorted entity list.
using AdjacencyIndex = std::unordered_map<std::uint64_t, std::vector<EntityId>>;

// Immutable triple store with the indexes used by commonsense generation,
// negative sampling and filtered ranking. Safe for concurrent reads.
class KnowledgeGraph {
 public:
  static KnowledgeGraph Build(const RawDataset& raw);

  const Vocabulary<EntityId>& entities() const { return entities_; }
  const Vocabulary<RelationId>& relations() const { return relations_; }
  const Vocabulary<ConceptId>& concepts() const { return concepts_; }
  std::size_t num_entities() const { return entities_.size(); }
  std::size_t num_relations() const { return relations_.size(); }
  std::size_t num_concepts() const { return concepts_.size(); }

  // Splits, deduplicated, in first-occurrence file order.
  std::span<const Triple> train() const { return train_; }
  std::span<const Triple> valid() const { return valid_; }
  std::span<const Triple> test() const { return test_; }

  // Train-split adjacency.
  std::span<const EntityId> TrainTails(EntityId head, RelationId r) const;
  std::span<const EntityId> TrainHeads(RelationId r, EntityId tail) const;
  bool IsTrain(const Triple& t) const {
    return train_set_.contains(PackTriple(t));
  }

  // Adjacency over train + valid + test, for the filtered setting.
  std::span<const EntityId> TrueTails(EntityId head, RelationId r) const;
  std::span<const EntityId> TrueHeads(RelationId r, EntityId tail) const;
  std::span<const EntityId> TrueEntities(const Triple& query, Side side) const;
  bool IsKnown(const Triple& t) const { return all_true_.contains(PackTriple(t)); }

  std::span<const ConceptId> ConceptsOf(EntityId e) const {
    return entity_concepts_.at(e.index());
  }
  std::span<const EntityId> EntitiesOf(ConceptId c) const {
    return concept_entities_.at(c.index());
  }
  bool HasConcept(EntityId e, ConceptId c) const;

  std::optional<ConceptId> sentinel_concept() const { return sentinel_; }
  const GraphBuildStats& build_stats() const { return stats_; }

  const AdjacencyIndex& train_hr_index() const { return train_hr_; }
  const AdjacencyIndex& train_rt_index() const { return train_rt_; }
  const std::unordered_set<std::uint64_t>& all_true() const { return all_true_; }

  // Label lookups; throw QueryError for unknown labels.
  EntityId EntityByLabel(std::string_view label) const;
  RelationId RelationByLabel(std::string_view label) const;

  // Writes the graph back out as a dataset directory (the four standard
  // files plus manifest.txt). Reloading it rebuilds identical ids and
  // indexes.
  void WriteDataset(const std::filesystem::path& dir) const;

 private:
  KnowledgeGraph() = default;

  Vocabulary<EntityId> entities_;
  Vocabulary<RelationId> relations_;
  Vocabulary<ConceptId> concepts_;

  std::vector<Triple> train_;
  std::vector<Triple> valid_;
  std::vector<Triple> test_;

  AdjacencyIndex train_hr_;
  AdjacencyIndex train_rt_;
  AdjacencyIndex all_hr_;
  AdjacencyIndex all_rt_;
  std::unordered_set<std::uint64_t> train_set_;
  std::unordered_set<std::uint64_t> all_true_;

  std::vector<std::vector<ConceptId>> entity_concepts_;
  std::vector<std::vector<EntityId>> concept_entities_;
  std::optional<ConceptId> sentinel_;
  GraphBuildStats stats_;
};

}  // namespace ckge

#endif  // CKGE_KNOWLEDGE_GRAPH_H_
