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

#ifndef CKGE_RELATION_PROFILE_H_
#define CKGE_RELATION_PROFILE_H_

#include <iosfwd>
#include <optional>
#include <string_view>
#include <vector>

#include "ckge/ids.h"

namespace ckge {

class KnowledgeGraph;

enum class RelationCategory { kOneToOne, kOneToN, kNToOne, kNToN };

std::string_view CategoryName(RelationCategory category);

inline constexpr double kDefaultCategoryThreshold = 1.5;

struct RelationProfile {
  RelationId relation;
  // Average heads per distinct (relation, tail) pair.
  double hpt = 0.0;
  // Average tails per distinct (relation, head) pair.
  double tph = 0.0;
  RelationCategory category = RelationCategory::kNToN;
};

RelationCategory Categorize(double hpt, double tph, double threshold);

// True when at most one entity is expected on `side` given the relation
// and the other entity: the tail of an N-1 relation, the head of a 1-N
// relation, both sides of a 1-1 relation.
bool IsUniqueSide(RelationCategory category, Side side);

// Per-relation statistics over the train split. Relations without train
// triples have no profile.
class RelationProfiles {
 public:
  RelationProfiles() = default;

  const RelationProfile* Find(RelationId r) const;
  std::size_t size() const;
  // Profiles in relation-id order.
  std::vector<RelationProfile> All() const;

 private:
  friend RelationProfiles ProfileRelations(const KnowledgeGraph&, double);
  std::vector<std::optional<RelationProfile>> by_relation_;
};

RelationProfiles ProfileRelations(
    const KnowledgeGraph& kg, double threshold = kDefaultCategoryThreshold);

// relation_profiles.tsv: `relation<TAB>hpt<TAB>tph<TAB>category`, six
// decimals, relation-id order.
void WriteRelationProfiles(const RelationProfiles& profiles,
                           const KnowledgeGraph& kg, std::ostream& out);

}  // namespace ckge

#endif  // CKGE_RELATION_PROFILE_H_
