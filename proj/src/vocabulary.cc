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

#include "ckge/vocabulary.h"

#include <algorithm>

namespace ckge {

template <typename IdType>
Vocabulary<IdType> Vocabulary<IdType>::FromLabels(
    std::vector<std::string> labels) {
  std::sort(labels.begin(), labels.end());
  labels.erase(std::unique(labels.begin(), labels.end()), labels.end());
  Vocabulary vocab;
  vocab.index_.reserve(labels.size());
  for (std::size_t i = 0; i < labels.size(); ++i) {
    vocab.index_.emplace(labels[i], static_cast<std::int32_t>(i));
  }
  vocab.labels_ = std::move(labels);
  return vocab;
}

template <typename IdType>
std::optional<IdType> Vocabulary<IdType>::Find(std::string_view label) const {
  auto it = index_.find(std::string(label));
  if (it == index_.end()) return std::nullopt;
  return IdType(it->second);
}

template class Vocabulary<EntityId>;
template class Vocabulary<RelationId>;
template class Vocabulary<ConceptId>;

}  // namespace ckge
