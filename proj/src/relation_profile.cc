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

#include "ckge/relation_profile.h"

#include <ostream>
#include <unordered_set>

#include <fmt/core.h>

#include "ckge/knowledge_graph.h"

namespace ckge {

std::string_view CategoryName(RelationCategory category) {
  switch (category) {
    case RelationCategory::kOneToOne:
      return "1-1";
    case RelationCategory::kOneToN:
      return "1-N";
    case RelationCategory::kNToOne:
      return "N-1";
    case RelationCategory::kNToN:
      return "N-N";
  }
  return "?";
}

RelationCategory Categorize(double hpt, double tph, double threshold) {
  const bool many_heads = hpt >= threshold;
  const bool many_tails = tph >= threshold;
  if (!many_heads && !many_tails) return RelationCategory::kOneToOne;
  if (!many_heads) return RelationCategory::kOneToN;
  if (!many_tails) return RelationCategory::kNToOne;
  return RelationCategory::kNToN;
}

bool IsUniqueSide(RelationCategory category, Side side) {
  switch (category) {
    case RelationCategory::kOneToOne:
      return true;
    case RelationCategory::kOneToN:
      return side == Side::kHead;
    case RelationCategory::kNToOne:
      return side == Side::kTail;
    case RelationCategory::kNToN:
      return false;
  }
  return false;
}

const RelationProfile* RelationProfiles::Find(RelationId r) const {
  if (!r.valid() || r.index() >= by_relation_.size()) return nullptr;
  const auto& slot = by_relation_[r.index()];
  return slot ? &*slot : nullptr;
}

std::size_t RelationProfiles::size() const {
  std::size_t n = 0;
  for (const auto& slot : by_relation_) n += slot.has_value();
  return n;
}

std::vector<RelationProfile> RelationProfiles::All() const {
  std::vector<RelationProfile> out;
  for (const auto& slot : by_relation_) {
    if (slot) out.push_back(*slot);
  }
  return out;
}

RelationProfiles ProfileRelations(const KnowledgeGraph& kg, double threshold) {
  const std::size_t num_relations = kg.num_relations();
  std::vector<std::size_t> triples(num_relations, 0);
  std::vector<std::unordered_set<std::int32_t>> heads(num_relations);
  std::vector<std::unordered_set<std::int32_t>> tails(num_relations);
  for (const Triple& t : kg.train()) {
    const auto r = t.relation.index();
    ++triples[r];
    heads[r].insert(t.head.value());
    tails[r].insert(t.tail.value());
  }

  RelationProfiles profiles;
  profiles.by_relation_.resize(num_relations);
  for (std::size_t r = 0; r < num_relations; ++r) {
    if (triples[r] == 0) continue;
    RelationProfile p;
    p.relation = RelationId(static_cast<std::int32_t>(r));
    const double count = static_cast<double>(triples[r]);
    p.hpt = count / static_cast<double>(tails[r].size());
    p.tph = count / static_cast<double>(heads[r].size());
    p.category = Categorize(p.hpt, p.tph, threshold);
    profiles.by_relation_[r] = p;
  }
  return profiles;
}

void WriteRelationProfiles(const RelationProfiles& profiles,
                           const KnowledgeGraph& kg, std::ostream& out) {
  for (const auto& p : profiles.All()) {
    out << fmt::format("{}\t{:.6f}\t{:.6f}\t{}\n",
                       kg.relations().label(p.relation), p.hpt, p.tph,
                       CategoryName(p.category));
  }
}

}  // namespace ckge
