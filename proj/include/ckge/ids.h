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

#ifndef CKGE_IDS_H_
#define CKGE_IDS_H_

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>

namespace ckge {

// Dense vocabulary index. The tag keeps entity, relation and concept ids
// from being mixed up at compile time.
template <typename Tag>
class Id {
 public:
  constexpr Id() = default;
  constexpr explicit Id(std::int32_t value) : value_(value) {}

  constexpr std::int32_t value() const { return value_; }
  constexpr std::size_t index() const {
    return static_cast<std::size_t>(value_);
  }
  constexpr bool valid() const { return value_ >= 0; }

  friend constexpr bool operator==(const Id&, const Id&) = default;
  friend constexpr auto operator<=>(const Id&, const Id&) = default;

 private:
  std::int32_t value_ = -1;
};

struct EntityTag {};
struct RelationTag {};
struct ConceptTag {};

using EntityId = Id<EntityTag>;
using RelationId = Id<RelationTag>;
using ConceptId = Id<ConceptTag>;

// Packed triple keys hold 24 bits per entity and 16 bits for the relation.
inline constexpr std::int64_t kMaxEntities = std::int64_t{1} << 24;
inline constexpr std::int64_t kMaxRelations = std::int64_t{1} << 16;

struct Triple {
  EntityId head;
  RelationId relation;
  EntityId tail;

  friend constexpr bool operator==(const Triple&, const Triple&) = default;
  friend constexpr auto operator<=>(const Triple&, const Triple&) = default;
};

constexpr std::uint64_t PackTriple(const Triple& t) {
  return (static_cast<std::uint64_t>(t.head.value()) << 40) |
         (static_cast<std::uint64_t>(t.relation.value()) << 24) |
         static_cast<std::uint64_t>(t.tail.value());
}

constexpr Triple UnpackTriple(std::uint64_t key) {
  return Triple{EntityId(static_cast<std::int32_t>(key >> 40)),
                RelationId(static_cast<std::int32_t>((key >> 24) & 0xFFFF)),
                EntityId(static_cast<std::int32_t>(key & 0xFFFFFF))};
}

// Key for an (entity, relation) pair, used by the adjacency indexes.
constexpr std::uint64_t PackPair(EntityId e, RelationId r) {
  return (static_cast<std::uint64_t>(e.value()) << 16) |
         static_cast<std::uint64_t>(r.value());
}

// Which entity slot of a triple is missing or being corrupted.
enum class Side { kHead, kTail };

constexpr EntityId EntityAt(const Triple& t, Side side) {
  return side == Side::kHead ? t.head : t.tail;
}

constexpr Triple WithEntity(Triple t, Side side, EntityId e) {
  if (side == Side::kHead) {
    t.head = e;
  } else {
    t.tail = e;
  }
  return t;
}

constexpr const char* SideName(Side side) {
  return side == Side::kHead ? "head" : "tail";
}

}  // namespace ckge

template <typename Tag>
struct std::hash<ckge::Id<Tag>> {
  std::size_t operator()(const ckge::Id<Tag>& id) const noexcept {
    return std::hash<std::int32_t>()(id.value());
  }
};

template <>
struct std::hash<ckge::Triple> {
  std::size_t operator()(const ckge::Triple& t) const noexcept {
    return std::hash<std::uint64_t>()(ckge::PackTriple(t));
  }
};

#endif  // CKGE_IDS_H_
