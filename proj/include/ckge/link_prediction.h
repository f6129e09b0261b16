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

#ifndef CKGE_LINK_PREDICTION_H_
#define CKGE_LINK_PREDICTION_H_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ckge/commonsense.h"
#include "ckge/ids.h"
#include "ckge/knowledge_graph.h"
#include "ckge/model.h"

namespace ckge {

enum class PredictionMode {
  // Commonsense-admitted candidates first, everything else after.
  kMultiView,
  // One ranking over all entities.
  kRawFactOnly,
};

std::string_view PredictionModeName(PredictionMode mode);
std::optional<PredictionMode> ParsePredictionMode(std::string_view name);

// Coarse commonsense filter for one query.
//
// For (h, r, ?) the admitted concepts are every c_t with (c_h, r, c_t) in
// the individual form for some concept c_h of h; the mirrored rule applies
// to (?, r, t). An entity is admitted if it carries an admitted concept.
struct CandidateSplit {
  std::vector<ConceptId> concepts;
  // One flag per entity id.
  std::vector<std::uint8_t> admitted;
  std::size_t admitted_count = 0;
  // No admitted concept was found; every entity is admitted.
  bool fallback = false;
};

// `query` carries the known entity on the other side; the entity on
// `missing` is ignored.
CandidateSplit CandidateEntities(const Triple& query, Side missing,
                                 const CommonsenseStore& cs,
                                 const KnowledgeGraph& kg);

struct RankResult {
  Triple triple;
  Side missing = Side::kTail;
  // Filtered rank of the gold entity, 1-based.
  std::size_t gold_rank = 0;
  // Same ranking without removing other known answers.
  std::size_t raw_rank = 0;
  std::size_t candidate_set_size = 0;
  bool used_fallback = false;
};

// Ranks the gold entity of `triple` on side `missing` by ascending energy,
// ties broken by ascending entity id. Other entities that form known true
// triples (train, valid or test) are removed first.
RankResult RankQuery(const Triple& triple, Side missing,
                     const ModelParams& params, const CommonsenseStore& cs,
                     const KnowledgeGraph& kg, PredictionMode mode);

struct Metrics {
  std::size_t count = 0;
  double mr = 0.0;
  double mrr = 0.0;
  double hits1 = 0.0;
  double hits3 = 0.0;
  double hits10 = 0.0;
};

Metrics MetricsFromRanks(std::span<const std::size_t> ranks);

// Head and tail queries for every triple, ranked on up to `workers`
// threads. The result does not depend on the worker count.
std::vector<RankResult> RankAll(std::span<const Triple> triples,
                                const ModelParams& params,
                                const CommonsenseStore& cs,
                                const KnowledgeGraph& kg, PredictionMode mode,
                                std::size_t workers = 1);

Metrics Evaluate(std::span<const Triple> triples, const ModelParams& params,
                 const CommonsenseStore& cs, const KnowledgeGraph& kg,
                 PredictionMode mode, std::size_t workers = 1);

struct ExplainedEntity {
  EntityId entity;
  double energy = 0.0;
  bool admitted = false;
  // Already a known fact in train/valid/test.
  bool known = false;
  std::vector<ConceptId> concepts;
  // Individual-form triples linking the query entity's concepts to this
  // entity's concepts through the query relation.
  std::vector<ConceptTriple> commonsense;
};

struct Explanation {
  Triple query;
  Side missing = Side::kTail;
  bool fallback = false;
  std::vector<ConceptId> candidate_concepts;
  std::vector<ExplainedEntity> top;
};

// Top-k entities in multi-view order with their supporting commonsense.
Explanation Explain(const Triple& query, Side missing,
                    const ModelParams& params, const CommonsenseStore& cs,
                    const KnowledgeGraph& kg, std::size_t k);

std::string FormatExplanation(const Explanation& explanation,
                              const KnowledgeGraph& kg);

}  // namespace ckge

#endif  // CKGE_LINK_PREDICTION_H_
