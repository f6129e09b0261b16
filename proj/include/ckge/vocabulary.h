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

#ifndef CKGE_VOCABULARY_H_
#define CKGE_VOCABULARY_H_

#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "ckge/ids.h"

namespace ckge {

// Bidirectional label <-> id map. Ids are assigned by lexicographic label
// order, so the same set of labels always yields the same ids.
template <typename IdType>
class Vocabulary {
 public:
  Vocabulary() = default;

  // Builds a vocabulary from an arbitrary (possibly repeating) label list.
  static Vocabulary FromLabels(std::vector<std::string> labels);

  std::size_t size() const { return labels_.size(); }
  const std::string& label(IdType id) const { return labels_.at(id.index()); }
  const std::vector<std::string>& labels() const { return labels_; }

  std::optional<IdType> Find(std::string_view label) const;

 private:
  std::vector<std::string> labels_;
  std::unordered_map<std::string, std::int32_t> index_;
};

extern template class Vocabulary<EntityId>;
extern template class Vocabulary<RelationId>;
extern template class Vocabulary<ConceptId>;

}  // namespace ckge

#endif  // CKGE_VOCABULARY_H_
