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

#ifndef CKGE_SAMPLER_H_
#define CKGE_SAMPLER_H_

#include <span>
#include <string_view>
#include <optional>
#include <vector>

#include "ckge/commonsense.h"
#include "ckge/ids.h"
#include "ckge/knowledge_graph.h"
#include "ckge/model.h"
#include "ckge/random.h"
#include "ckge/relation_profile.h"

namespace ckge {

enum class SamplingStrategy { kUniform, kSelfAdversarial, kCommonsenseAware };

std::string_view StrategyName(SamplingStrategy strategy);
std::optional<SamplingStrategy> ParseStrategy(std::string_view name);

struct SamplerConfig {
  SamplingStrategy strategy = SamplingStrategy::kCommonsenseAware;
  // Negatives kept per side for every positive.
  std::size_t negatives = 2;
  // Softmax temperature over candidate plausibilities.
  double alpha = 1.0;
  // Candidates drawn per side before weighting; must be >= negatives.
  std::size_t pool_size = 64;
  // Off: candidates come from all entities (-CSNS).
  bool use_commonsense = true;
  // Off: both sides draw from the relation's concept sets and are weighted
  // as unique sides (-CRNS).
  bool use_relation_categories = true;
  // On: softmax over alpha * energy instead of alpha * (-energy).
  bool energy_logits = false;

  // Throws ConfigError when an invariant is violated.
  void Validate() const;
};

struct WeightedNegative {
  Triple triple;
  double weight = 0.0;
};

struct NegativeBatch {
  Triple positive;
  std::vector<WeightedNegative> head_corrupted;
  std::vector<WeightedNegative> tail_corrupted;
  std::size_t n = 0;
};

// Degenerate cases seen while sampling. Each worker keeps its own copy.
struct SamplerStats {
  std::size_t missing_commonsense = 0;
  std::size_t padded_pools = 0;
  std::size_t uniform_fallbacks = 0;
  std::size_t empty_sides = 0;

  SamplerStats& operator+=(const SamplerStats& other);
};

// Whether each side of a relation is weighted as a unique ("1") side.
struct SideRoles {
  bool head_unique = true;
  bool tail_unique = true;

  bool unique(Side side) const {
    return side == Side::kHead ? head_unique : tail_unique;
  }
};

// Both sides are unique when categories are disabled or unknown.
SideRoles RolesFor(const RelationProfile* profile, const SamplerConfig& cfg);

// Candidate concepts for corrupting `side` of `positive`.
//
// Unique side: the concepts of the true entity on that side. Non-unique
// side: the relation's full concept set for that side. If the relation has
// no commonsense every concept is returned and `degenerate` is set.
std::vector<ConceptId> CandidateConcepts(const Triple& positive, Side side,
                                         bool unique_side,
                                         const CommonsenseStore& cs,
                                         const KnowledgeGraph& kg,
                                         bool* degenerate = nullptr);

std::vector<ConceptId> CandidateConcepts(const Triple& positive, Side side,
                                         const CommonsenseStore& cs,
                                         const RelationProfile& profile,
                                         const KnowledgeGraph& kg,
                                         bool* degenerate = nullptr);

// Every entity in any of `concepts`, minus the true entity on `side` and
// minus entities whose substitution yields a train triple. Sorted by id.
std::vector<EntityId> CorruptionPool(std::span<const ConceptId> concepts,
                                     const Triple& positive, Side side,
                                     const KnowledgeGraph& kg);

// Numerically stable softmax.
std::vector<double> SoftmaxProbabilities(std::span<const double> logits);

// Unique side: w = p. Non-unique side: w = 1 - p.
std::vector<double> NegativeWeights(std::span<const double> probabilities,
                                    bool unique_side);

// Scores both pools, turns alpha-scaled plausibilities into per-side
// softmax probabilities and weights, and keeps the `cfg.negatives`
// highest-weighted candidates per side (ties: lower entity id first).
NegativeBatch WeighNegatives(const Triple& positive,
                             std::span<const EntityId> head_pool,
                             std::span<const EntityId> tail_pool,
                             const ModelParams& params,
                             const SamplerConfig& cfg, SideRoles roles);

// Stateless apart from the caller-supplied random stream; one instance can
// serve many workers.
class NegativeSampler {
 public:
  NegativeSampler(const KnowledgeGraph& kg, const CommonsenseStore& cs,
                  const RelationProfiles& profiles, SamplerConfig cfg);

  const SamplerConfig& config() const { return cfg_; }

  NegativeBatch Sample(const Triple& positive, const ModelParams& params,
                       Rng& rng, SamplerStats* stats = nullptr) const;

  // Candidate pool for one side as used by Sample (before weighting).
  std::vector<EntityId> DrawPool(const Triple& positive, Side side,
                                 bool unique_side, Rng& rng,
                                 SamplerStats* stats) const;

 private:
  std::vector<EntityId> DrawPool(const SamplerConfig& cfg,
                                 const Triple& positive, Side side,
                                 bool unique_side, Rng& rng,
                                 SamplerStats* stats) const;
  NegativeBatch SampleUniform(const Triple& positive, Rng& rng,
                              SamplerStats* stats) const;
  NegativeBatch SampleWeighted(const Triple& positive,
                               const ModelParams& params,
                               const SamplerConfig& cfg, Rng& rng,
                               SamplerStats* stats) const;

  // Adds up to `target` distinct eligible entities drawn uniformly from all
  // entities.
  void FillUniform(const Triple& positive, Side side, std::size_t target,
                   Rng& rng, std::vector<EntityId>& out) const;
  bool Eligible(const Triple& positive, Side side, EntityId e,
                std::span<const EntityId> chosen) const;

  const KnowledgeGraph& kg_;
  const CommonsenseStore& cs_;
  const RelationProfiles& profiles_;
  SamplerConfig cfg_;
};

}  // namespace ckge

#endif  // CKGE_SAMPLER_H_
