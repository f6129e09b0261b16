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

#include "ckge/knowledge_graph.h"

#include <algorithm>
#include <fstream>
#include <map>
#include <set>

#include <fmt/core.h>

#include "ckge/error.h"

namespace ckge {
namespace {

std::span<const EntityId> Lookup(const AdjacencyIndex& index,
                                 std::uint64_t key) {
  auto it = index.find(key);
  if (it == index.end()) return {};
  return it->second;
}

void SortIndex(AdjacencyIndex& index) {
  for (auto& [key, list] : index) {
    std::sort(list.begin(), list.end());
    list.erase(std::unique(list.begin(), list.end()), list.end());
  }
}

void WriteTriples(const KnowledgeGraph& kg, std::span<const Triple> triples,
                  const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw DatasetError(fmt::format("cannot write {}", path.string()));
  for (const auto& t : triples) {
    out << kg.entities().label(t.head) << '\t'
        << kg.relations().label(t.relation) << '\t'
        << kg.entities().label(t.tail) << '\n';
  }
}

}  // namespace

KnowledgeGraph KnowledgeGraph::Build(const RawDataset& raw) {
  KnowledgeGraph kg;

  std::vector<std::string> entity_labels;
  std::vector<std::string> relation_labels;
  for (const auto* split : {&raw.train, &raw.valid, &raw.test}) {
    for (const auto& t : *split) {
      entity_labels.push_back(t.head);
      entity_labels.push_back(t.tail);
      relation_labels.push_back(t.relation);
    }
  }
  kg.entities_ = Vocabulary<EntityId>::FromLabels(std::move(entity_labels));
  kg.relations_ = Vocabulary<RelationId>::FromLabels(std::move(relation_labels));
  if (static_cast<std::int64_t>(kg.entities_.size()) > kMaxEntities ||
      static_cast<std::int64_t>(kg.relations_.size()) > kMaxRelations) {
    throw DatasetError(fmt::format(
        "{} entities / {} relations exceed the supported {} / {}",
        kg.entities_.size(), kg.relations_.size(), kMaxEntities,
        kMaxRelations));
  }
  const std::size_t num_entities = kg.entities_.size();

  // Concept labels per entity id.
  std::vector<std::set<std::string>> labels_of(num_entities);
  for (const auto& line : raw.concepts) {
    auto e = kg.entities_.Find(line.entity);
    if (!e) {
      ++kg.stats_.unused_concept_lines;
      continue;
    }
    if (!labels_of[e->index()].insert(line.concept_label).second) {
      ++kg.stats_.duplicate_concept_lines;
    }
  }
  std::vector<std::string> concept_labels;
  for (auto& labels : labels_of) {
    if (labels.empty()) {
      labels.insert(kSentinelConcept);
      ++kg.stats_.sentinel_entities;
    }
    concept_labels.insert(concept_labels.end(), labels.begin(), labels.end());
  }
  kg.concepts_ = Vocabulary<ConceptId>::FromLabels(std::move(concept_labels));
  kg.sentinel_ = kg.concepts_.Find(kSentinelConcept);

  kg.entity_concepts_.resize(num_entities);
  kg.concept_entities_.resize(kg.concepts_.size());
  for (std::size_t e = 0; e < num_entities; ++e) {
    for (const auto& label : labels_of[e]) {
      const ConceptId c = *kg.concepts_.Find(label);
      kg.entity_concepts_[e].push_back(c);
      kg.concept_entities_[c.index()].push_back(
          EntityId(static_cast<std::int32_t>(e)));
    }
    std::sort(kg.entity_concepts_[e].begin(), kg.entity_concepts_[e].end());
  }

  auto convert = [&kg](const std::vector<RawTriple>& in,
                       std::vector<Triple>& out,
                       std::unordered_set<std::uint64_t>& seen) {
    for (const auto& r : in) {
      Triple t{*kg.entities_.Find(r.head), *kg.relations_.Find(r.relation),
               *kg.entities_.Find(r.tail)};
      if (seen.insert(PackTriple(t)).second) out.push_back(t);
    }
  };
  std::unordered_set<std::uint64_t> valid_seen;
  std::unordered_set<std::uint64_t> test_seen;
  convert(raw.train, kg.train_, kg.train_set_);
  convert(raw.valid, kg.valid_, valid_seen);
  convert(raw.test, kg.test_, test_seen);

  std::vector<bool> in_train(num_entities, false);
  for (const auto& t : kg.train_) {
    in_train[t.head.index()] = true;
    in_train[t.tail.index()] = true;
    kg.train_hr_[PackPair(t.head, t.relation)].push_back(t.tail);
    kg.train_rt_[PackPair(t.tail, t.relation)].push_back(t.head);
  }
  kg.stats_.eval_only_entities = static_cast<std::size_t>(
      std::count(in_train.begin(), in_train.end(), false));

  for (const auto* split : {&kg.train_, &kg.valid_, &kg.test_}) {
    for (const auto& t : *split) {
      kg.all_true_.insert(PackTriple(t));
      kg.all_hr_[PackPair(t.head, t.relation)].push_back(t.tail);
      kg.all_rt_[PackPair(t.tail, t.relation)].push_back(t.head);
    }
  }
  SortIndex(kg.train_hr_);
  SortIndex(kg.train_rt_);
  SortIndex(kg.all_hr_);
  SortIndex(kg.all_rt_);
  return kg;
}

std::span<const EntityId> KnowledgeGraph::TrainTails(EntityId head,
                                                     RelationId r) const {
  return Lookup(train_hr_, PackPair(head, r));
}

std::span<const EntityId> KnowledgeGraph::TrainHeads(RelationId r,
                                                     EntityId tail) const {
  return Lookup(train_rt_, PackPair(tail, r));
}

std::span<const EntityId> KnowledgeGraph::TrueTails(EntityId head,
                                                    RelationId r) const {
  return Lookup(all_hr_, PackPair(head, r));
}

std::span<const EntityId> KnowledgeGraph::TrueHeads(RelationId r,
                                                    EntityId tail) const {
  return Lookup(all_rt_, PackPair(tail, r));
}

std::span<const EntityId> KnowledgeGraph::TrueEntities(const Triple& query,
                                                       Side side) const {
  return side == Side::kTail ? TrueTails(query.head, query.relation)
                             : TrueHeads(query.relation, query.tail);
}

bool KnowledgeGraph::HasConcept(EntityId e, ConceptId c) const {
  const auto& list = entity_concepts_.at(e.index());
  return std::binary_search(list.begin(), list.end(), c);
}

EntityId KnowledgeGraph::EntityByLabel(std::string_view label) const {
  auto id = entities_.Find(label);
  if (!id) throw QueryError(fmt::format("unknown entity '{}'", label));
  return *id;
}

RelationId KnowledgeGraph::RelationByLabel(std::string_view label) const {
  auto id = relations_.Find(label);
  if (!id) throw QueryError(fmt::format("unknown relation '{}'", label));
  return *id;
}

void KnowledgeGraph::WriteDataset(const std::filesystem::path& dir) const {
  std::filesystem::create_directories(dir);
  WriteTriples(*this, train_, dir / "train.txt");
  WriteTriples(*this, valid_, dir / "valid.txt");
  WriteTriples(*this, test_, dir / "test.txt");
  const auto concept_path = dir / "entity2concept.txt";
  std::ofstream out(concept_path);
  if (!out) {
    throw DatasetError(fmt::format("cannot write {}", concept_path.string()));
  }
  for (std::size_t e = 0; e < entity_concepts_.size(); ++e) {
    for (const ConceptId c : entity_concepts_[e]) {
      out << entities_.labels()[e] << '\t' << concepts_.label(c) << '\n';
    }
  }
  DatasetManifest manifest;
  manifest.train = "train.txt";
  manifest.valid = "valid.txt";
  manifest.test = "test.txt";
  manifest.entity2concept = "entity2concept.txt";
  WriteManifest(manifest, dir / "manifest.txt");
}

}  // namespace ckge
