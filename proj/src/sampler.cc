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

#include "ckge/sampler.h"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <fmt/core.h>

#include "ckge/error.h"

namespace ckge {
namespace {

// Above this many concept members the pool is sampled by rejection
// instead of being materialized.
constexpr std::size_t kMaterializeFactor = 4;
constexpr std::size_t kAttemptsPerSlot = 32;

std::vector<ConceptId> AllConcepts(const KnowledgeGraph& kg) {
  std::vector<ConceptId> all(kg.num_concepts());
  for (std::size_t c = 0; c < all.size(); ++c) {
    all[c] = ConceptId(static_cast<std::int32_t>(c));
  }
  return all;
}

std::vector<WeightedNegative> TopWeighted(const Triple& positive, Side side,
                                          std::span<const EntityId> pool,
                                          std::span<const double> weights,
                                          std::size_t n) {
  std::vector<std::size_t> order(pool.size());
  std::iota(order.begin(), order.end(), 0);
  const std::size_t keep = std::min(n, pool.size());
  std::partial_sort(order.begin(), order.begin() + keep, order.end(),
                    [&](std::size_t a, std::size_t b) {
                      if (weights[a] != weights[b]) return weights[a] > weights[b];
                      return pool[a] < pool[b];
                    });
  std::vector<WeightedNegative> out;
  out.reserve(keep);
  for (std::size_t i = 0; i < keep; ++i) {
    out.push_back({WithEntity(positive, side, pool[order[i]]),
                   weights[order[i]]});
  }
  return out;
}

}  // namespace

std::string_view StrategyName(SamplingStrategy strategy) {
  switch (strategy) {
    case SamplingStrategy::kUniform:
      return "uniform";
    case SamplingStrategy::kSelfAdversarial:
      return "self-adversarial";
    case SamplingStrategy::kCommonsenseAware:
      return "cans";
  }
  return "?";
}

std::optional<SamplingStrategy> ParseStrategy(std::string_view name) {
  if (name == "uniform") return SamplingStrategy::kUniform;
  if (name == "self-adversarial" || name == "sadv") {
    return SamplingStrategy::kSelfAdversarial;
  }
  if (name == "cans") return SamplingStrategy::kCommonsenseAware;
  return std::nullopt;
}

void SamplerConfig::Validate() const {
  if (negatives < 1) throw ConfigError("negatives must be >= 1");
  if (pool_size < negatives) {
    throw ConfigError(fmt::format("pool_size ({}) must be >= negatives ({})",
                                  pool_size, negatives));
  }
  if (!(alpha >= 0.0) || !std::isfinite(alpha)) {
    throw ConfigError("alpha must be a finite value >= 0");
  }
}

SamplerStats& SamplerStats::operator+=(const SamplerStats& other) {
  missing_commonsense += other.missing_commonsense;
  padded_pools += other.padded_pools;
  uniform_fallbacks += other.uniform_fallbacks;
  empty_sides += other.empty_sides;
  return *this;
}

SideRoles RolesFor(const RelationProfile* profile, const SamplerConfig& cfg) {
  if (!cfg.use_relation_categories || profile == nullptr) return {};
  return {IsUniqueSide(profile->category, Side::kHead),
          IsUniqueSide(profile->category, Side::kTail)};
}

std::vector<ConceptId> CandidateConcepts(const Triple& positive, Side side,
                                         bool unique_side,
                                         const CommonsenseStore& cs,
                                         const KnowledgeGraph& kg,
                                         bool* degenerate) {
  if (degenerate != nullptr) *degenerate = false;
  if (unique_side) {
    const auto own = kg.ConceptsOf(EntityAt(positive, side));
    return {own.begin(), own.end()};
  }
  if (!cs.HasRelation(positive.relation)) {
    if (degenerate != nullptr) *degenerate = true;
    return AllConcepts(kg);
  }
  const auto& sets = cs.SetsFor(positive.relation);
  return side == Side::kHead ? sets.head_concepts : sets.tail_concepts;
}

std::vector<ConceptId> CandidateConcepts(const Triple& positive, Side side,
                                         const CommonsenseStore& cs,
                                         const RelationProfile& profile,
                                         const KnowledgeGraph& kg,
                                         bool* degenerate) {
  return CandidateConcepts(positive, side, IsUniqueSide(profile.category, side),
                           cs, kg, degenerate);
}

std::vector<EntityId> CorruptionPool(std::span<const ConceptId> concepts,
                                     const Triple& positive, Side side,
                                     const KnowledgeGraph& kg) {
  std::vector<EntityId> pool;
  const EntityId own = EntityAt(positive, side);
  for (const ConceptId c : concepts) {
    for (const EntityId e : kg.EntitiesOf(c)) {
      if (e == own || kg.IsTrain(WithEntity(positive, side, e))) continue;
      pool.push_back(e);
    }
  }
  std::sort(pool.begin(), pool.end());
  pool.erase(std::unique(pool.begin(), pool.end()), pool.end());
  return pool;
}

std::vector<double> SoftmaxProbabilities(std::span<const double> logits) {
  std::vector<double> p(logits.size());
  if (logits.empty()) return p;
  const double max = *std::max_element(logits.begin(), logits.end());
  double total = 0.0;
  for (std::size_t i = 0; i < logits.size(); ++i) {
    p[i] = std::exp(logits[i] - max);
    total += p[i];
  }
  for (double& x : p) x /= total;
  return p;
}

std::vector<double> NegativeWeights(std::span<const double> probabilities,
                                    bool unique_side) {
  std::vector<double> w(probabilities.begin(), probabilities.end());
  if (!unique_side) {
    for (double& x : w) x = 1.0 - x;
  }
  return w;
}

NegativeBatch WeighNegatives(const Triple& positive,
                             std::span<const EntityId> head_pool,
                             std::span<const EntityId> tail_pool,
                             const ModelParams& params,
                             const SamplerConfig& cfg, SideRoles roles) {
  NegativeBatch batch;
  batch.positive = positive;
  batch.n = cfg.negatives;
  const double sign = cfg.energy_logits ? 1.0 : -1.0;
  auto weigh = [&](Side side, std::span<const EntityId> pool) {
    std::vector<double> logits(pool.size());
    for (std::size_t i = 0; i < pool.size(); ++i) {
      logits[i] =
          sign * cfg.alpha * Score(params, WithEntity(positive, side, pool[i]));
    }
    const auto weights =
        NegativeWeights(SoftmaxProbabilities(logits), roles.unique(side));
    return TopWeighted(positive, side, pool, weights, cfg.negatives);
  };
  batch.head_corrupted = weigh(Side::kHead, head_pool);
  batch.tail_corrupted = weigh(Side::kTail, tail_pool);
  return batch;
}

NegativeSampler::NegativeSampler(const KnowledgeGraph& kg,
                                 const CommonsenseStore& cs,
                                 const RelationProfiles& profiles,
                                 SamplerConfig cfg)
    : kg_(kg), cs_(cs), profiles_(profiles), cfg_(cfg) {
  cfg_.Validate();
}

bool NegativeSampler::Eligible(const Triple& positive, Side side, EntityId e,
                               std::span<const EntityId> chosen) const {
  if (e == EntityAt(positive, side)) return false;
  if (kg_.IsTrain(WithEntity(positive, side, e))) return false;
  return std::find(chosen.begin(), chosen.end(), e) == chosen.end();
}

void NegativeSampler::FillUniform(const Triple& positive, Side side,
                                  std::size_t target, Rng& rng,
                                  std::vector<EntityId>& out) const {
  const std::size_t n = kg_.num_entities();
  if (out.size() >= target) return;
  if (n <= kMaterializeFactor * target) {
    std::vector<EntityId> eligible;
    for (std::size_t i = 0; i < n; ++i) {
      const EntityId e(static_cast<std::int32_t>(i));
      if (Eligible(positive, side, e, out)) eligible.push_back(e);
    }
    const std::size_t take = std::min(target - out.size(), eligible.size());
    for (std::size_t i = 0; i < take; ++i) {
      const std::size_t j = i + rng.Below(eligible.size() - i);
      std::swap(eligible[i], eligible[j]);
      out.push_back(eligible[i]);
    }
    return;
  }
  std::size_t attempts = 0;
  const std::size_t max_attempts = kAttemptsPerSlot * target + 64;
  while (out.size() < target && attempts++ < max_attempts) {
    const EntityId e(static_cast<std::int32_t>(rng.Below(n)));
    if (Eligible(positive, side, e, out)) out.push_back(e);
  }
}

std::vector<EntityId> NegativeSampler::DrawPool(const Triple& positive,
                                                Side side, bool unique_side,
                                                Rng& rng,
                                                SamplerStats* stats) const {
  return DrawPool(cfg_, positive, side, unique_side, rng, stats);
}

std::vector<EntityId> NegativeSampler::DrawPool(const SamplerConfig& cfg,
                                                const Triple& positive,
                                                Side side, bool unique_side,
                                                Rng& rng,
                                                SamplerStats* stats) const {
  const std::size_t target = cfg.pool_size;
  std::vector<EntityId> pool;
  pool.reserve(target);
  if (!cfg.use_commonsense) {
    FillUniform(positive, side, target, rng, pool);
  } else {
    bool degenerate = false;
    const auto concepts =
        CandidateConcepts(positive, side, unique_side, cs_, kg_, &degenerate);
    if (degenerate && stats != nullptr) ++stats->missing_commonsense;

    std::vector<std::size_t> cumulative;
    cumulative.reserve(concepts.size());
    std::size_t members = 0;
    for (const ConceptId c : concepts) {
      members += kg_.EntitiesOf(c).size();
      cumulative.push_back(members);
    }

    if (members <= kMaterializeFactor * target) {
      auto eligible = CorruptionPool(concepts, positive, side, kg_);
      if (eligible.size() <= target) {
        pool = std::move(eligible);
      } else {
        // Partial Fisher-Yates.
        for (std::size_t i = 0; i < target; ++i) {
          const std::size_t j = i + rng.Below(eligible.size() - i);
          std::swap(eligible[i], eligible[j]);
        }
        pool.assign(eligible.begin(), eligible.begin() + target);
      }
    } else {
      // Uniform over the union: pick a member slot uniformly, then accept
      // with probability 1 / (number of candidate concepts holding it).
      std::size_t attempts = 0;
      const std::size_t max_attempts = kAttemptsPerSlot * target;
      while (pool.size() < target && attempts++ < max_attempts) {
        const std::size_t slot = rng.Below(members);
        const auto bucket = static_cast<std::size_t>(
            std::upper_bound(cumulative.begin(), cumulative.end(), slot) -
            cumulative.begin());
        const std::size_t offset =
            slot - (bucket == 0 ? 0 : cumulative[bucket - 1]);
        const EntityId e = kg_.EntitiesOf(concepts[bucket])[offset];
        std::size_t multiplicity = 0;
        for (const ConceptId c : kg_.ConceptsOf(e)) {
          multiplicity += std::binary_search(concepts.begin(), concepts.end(), c);
        }
        if (multiplicity > 1 && rng.Below(multiplicity) != 0) continue;
        if (Eligible(positive, side, e, pool)) pool.push_back(e);
      }
    }
    if (pool.empty()) {
      if (stats != nullptr) ++stats->uniform_fallbacks;
    } else if (pool.size() < target) {
      if (stats != nullptr) ++stats->padded_pools;
    }
    FillUniform(positive, side, target, rng, pool);
  }
  if (pool.empty() && stats != nullptr) ++stats->empty_sides;
  return pool;
}

NegativeBatch NegativeSampler::Sample(const Triple& positive,
                                      const ModelParams& params, Rng& rng,
                                      SamplerStats* stats) const {
  switch (cfg_.strategy) {
    case SamplingStrategy::kUniform:
      return SampleUniform(positive, rng, stats);
    case SamplingStrategy::kSelfAdversarial: {
      SamplerConfig cfg = cfg_;
      cfg.use_commonsense = false;
      cfg.use_relation_categories = false;
      return SampleWeighted(positive, params, cfg, rng, stats);
    }
    case SamplingStrategy::kCommonsenseAware:
      return SampleWeighted(positive, params, cfg_, rng, stats);
  }
  return {};
}

NegativeBatch NegativeSampler::SampleUniform(const Triple& positive, Rng& rng,
                                             SamplerStats* stats) const {
  NegativeBatch batch;
  batch.positive = positive;
  batch.n = cfg_.negatives;
  const double weight = 1.0 / static_cast<double>(cfg_.negatives);
  for (const Side side : {Side::kHead, Side::kTail}) {
    std::vector<EntityId> drawn;
    FillUniform(positive, side, cfg_.negatives, rng, drawn);
    if (drawn.empty() && stats != nullptr) ++stats->empty_sides;
    auto& out =
        side == Side::kHead ? batch.head_corrupted : batch.tail_corrupted;
    for (const EntityId e : drawn) {
      out.push_back({WithEntity(positive, side, e), weight});
    }
  }
  return batch;
}

NegativeBatch NegativeSampler::SampleWeighted(const Triple& positive,
                                              const ModelParams& params,
                                              const SamplerConfig& cfg,
                                              Rng& rng,
                                              SamplerStats* stats) const {
  const RelationProfile* profile = profiles_.Find(positive.relation);
  const SideRoles roles = RolesFor(profile, cfg);
  // Without relation categories every side draws from the relation's
  // commonsense concept set and is weighted as a unique side.
  auto own_concepts = [&](Side side) {
    return cfg.use_relation_categories && profile != nullptr &&
           IsUniqueSide(profile->category, side);
  };
  const auto head_pool = DrawPool(cfg, positive, Side::kHead,
                                  own_concepts(Side::kHead), rng, stats);
  const auto tail_pool = DrawPool(cfg, positive, Side::kTail,
                                  own_concepts(Side::kTail), rng, stats);
  return WeighNegatives(positive, head_pool, tail_pool, params, cfg, roles);
}

}  // namespace ckge
