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
#include <map>

#include <gtest/gtest.h>

#include "checks.h"
#include "ckge/commonsense.h"
#include "ckge/error.h"
#include "ckge/knowledge_graph.h"
#include "ckge/random.h"
#include "ckge/relation_profile.h"
#include "oracle.h"
#include "test_util.h"

namespace ckge {
namespace {

// Located-in fragment: cities, counties and islands in states, plus an
// island that only appears under another relation.
RawDataset LocatedInFragment() {
  RawDataset raw;
  raw.train = {{"atlanta", "locatedin", "georgia", 1},
               {"savannah", "locatedin", "georgia", 2},
               {"fulton", "locatedin", "georgia", 3},
               {"cumberland", "locatedin", "georgia", 4},
               {"memphis", "locatedin", "tennessee", 5},
               {"shelby", "locatedin", "tennessee", 6},
               {"greenland", "partof", "denmark", 7}};
  raw.concepts = {{"atlanta", "city", 1},        {"savannah", "city", 2},
                  {"memphis", "city", 3},        {"fulton", "county", 4},
                  {"shelby", "county", 5},       {"cumberland", "island", 6},
                  {"greenland", "island", 7},    {"georgia", "stateprovince", 8},
                  {"tennessee", "stateprovince", 9}, {"denmark", "country", 10}};
  return raw;
}

std::set<std::string> ConceptLabels(const KnowledgeGraph& kg,
                                    const std::vector<ConceptId>& ids) {
  std::set<std::string> out;
  for (const ConceptId c : ids) out.insert(kg.concepts().label(c));
  return out;
}

TEST(SoftmaxTest, WorkedExample) {
  const std::vector<double> logits{2.0, 1.0, 0.0};
  const auto p = SoftmaxProbabilities(logits);
  EXPECT_NEAR(p[0], 0.6652, 5e-5);
  EXPECT_NEAR(p[1], 0.2447, 5e-5);
  EXPECT_NEAR(p[2], 0.0900, 5e-5);
  EXPECT_EQ(NegativeWeights(p, true), p);
  const auto w = NegativeWeights(p, false);
  for (int i = 0; i < 3; ++i) EXPECT_DOUBLE_EQ(w[i], 1.0 - p[i]);
}

TEST(SoftmaxTest, DegenerateCases) {
  EXPECT_EQ(SoftmaxProbabilities(std::vector<double>{-3.0}),
            std::vector<double>{1.0});
  const auto two = SoftmaxProbabilities(std::vector<double>{4.0, 4.0});
  EXPECT_EQ(NegativeWeights(two, false), (std::vector<double>{0.5, 0.5}));
  // Large logits do not overflow.
  const auto big = SoftmaxProbabilities(std::vector<double>{1000.0, 999.0});
  EXPECT_NEAR(big[0] + big[1], 1.0, 1e-15);
}

TEST(SoftmaxTest, RandomPoolsMatchScratchSoftmax) {
  const auto report = checks::CheckNegativeWeights(31, 50);
  EXPECT_EQ(report.pools, 100u);
  EXPECT_LE(report.max_sum_error, 1e-9);
  EXPECT_LE(report.max_unique_error, 1e-12);
  EXPECT_LE(report.max_nonunique_error, 1e-12);
}

TEST(CandidateConceptsTest, LocatedInFragment) {
  const KnowledgeGraph kg = KnowledgeGraph::Build(LocatedInFragment());
  const CommonsenseStore cs = BuildCommonsense(kg);
  const RelationProfiles profiles = ProfileRelations(kg);
  const Triple positive{kg.EntityByLabel("atlanta"),
                        kg.RelationByLabel("locatedin"),
                        kg.EntityByLabel("georgia")};
  const RelationProfile* profile = profiles.Find(positive.relation);
  ASSERT_NE(profile, nullptr);
  EXPECT_EQ(profile->category, RelationCategory::kNToOne);
  EXPECT_DOUBLE_EQ(profile->hpt, 3.0);
  EXPECT_EQ(ConceptLabels(kg, CandidateConcepts(positive, Side::kHead, cs,
                                                *profile, kg)),
            (std::set<std::string>{"city", "county", "island"}));
  EXPECT_EQ(ConceptLabels(kg, CandidateConcepts(positive, Side::kTail, cs,
                                                *profile, kg)),
            (std::set<std::string>{"stateprovince"}));

  // The head pool reaches greenland through the island concept.
  const auto pool =
      CorruptionPool(CandidateConcepts(positive, Side::kHead, cs, *profile, kg),
                     positive, Side::kHead, kg);
  std::set<std::string> labels;
  for (const EntityId e : pool) labels.insert(kg.entities().label(e));
  EXPECT_TRUE(labels.contains("greenland"));
  EXPECT_FALSE(labels.contains("atlanta"));
  EXPECT_FALSE(labels.contains("savannah"));  // (savannah, locatedin, georgia) is train
  EXPECT_TRUE(labels.contains("memphis"));
}

TEST(CandidateConceptsTest, RelationWithoutCommonsenseIsDegenerate) {
  const KnowledgeGraph kg = KnowledgeGraph::Build(LocatedInFragment());
  const CommonsenseStore empty;
  const Triple positive{kg.EntityByLabel("atlanta"),
                        kg.RelationByLabel("locatedin"),
                        kg.EntityByLabel("georgia")};
  bool degenerate = false;
  const auto concepts = CandidateConcepts(positive, Side::kHead, false, empty,
                                          kg, &degenerate);
  EXPECT_TRUE(degenerate);
  EXPECT_EQ(concepts.size(), kg.num_concepts());
}

TEST(CorruptionPoolTest, ToyMatchesBruteForceUnion) {
  const KnowledgeGraph kg = KnowledgeGraph::Build(testing::LoadDir(testing::ToyDir()));
  const CommonsenseStore cs = BuildCommonsense(kg);
  const RelationProfiles profiles = ProfileRelations(kg);
  const oracle::Data data = oracle::ReadDir(testing::ToyDir());
  const auto c2 = oracle::C2(data);
  const auto oracle_profiles = oracle::Profiles(data, 1.5);
  for (const auto& [h, r, t] : data.train) {
    const Triple positive{kg.EntityByLabel(h), kg.RelationByLabel(r),
                          kg.EntityByLabel(t)};
    const std::string category = oracle_profiles.at(r).category;
    for (const Side side : {Side::kHead, Side::kTail}) {
      const bool head = side == Side::kHead;
      const bool unique = category == "1-1" || (head && category == "1-N") ||
                          (!head && category == "N-1");
      const std::string& own = head ? h : t;
      const std::set<std::string> concepts =
          unique ? data.concepts.at(own) : (head ? c2.at(r).heads : c2.at(r).tails);
      std::set<std::string> want;
      for (const auto& [e, ecs] : data.concepts) {
        const bool member = std::any_of(ecs.begin(), ecs.end(), [&](const auto& c) {
          return concepts.contains(c);
        });
        const oracle::LabelTriple corrupted =
            head ? oracle::LabelTriple{e, r, t} : oracle::LabelTriple{h, r, e};
        if (member && e != own && !data.train.contains(corrupted)) want.insert(e);
      }
      const auto ids = CandidateConcepts(positive, side, cs,
                                         *profiles.Find(positive.relation), kg);
      EXPECT_EQ(ConceptLabels(kg, ids), concepts);
      std::set<std::string> got;
      for (const EntityId e : CorruptionPool(ids, positive, side, kg)) {
        got.insert(kg.entities().label(e));
      }
      EXPECT_EQ(got, want) << h << " " << r << " " << t << " " << SideName(side);
    }
  }
}

class SamplerFixture : public ::testing::Test {
 protected:
  void SetUp() override {
    testing::PlantedOptions o;
    o.seed = 3;
    raw_ = testing::PlantedDataset(o);
    kg_ = std::make_unique<KnowledgeGraph>(KnowledgeGraph::Build(raw_));
    cs_ = BuildCommonsense(*kg_);
    profiles_ = ProfileRelations(*kg_);
    params_ = InitParams(ModelKind::kTransE, kg_->num_entities(),
                         kg_->num_relations(), 8, 12.0, 1);
  }

  RawDataset raw_;
  std::unique_ptr<KnowledgeGraph> kg_;
  CommonsenseStore cs_;
  RelationProfiles profiles_;
  ModelParams params_;
};

TEST_F(SamplerFixture, NegativesAreValidCorruptions) {
  for (const SamplingStrategy strategy :
       {SamplingStrategy::kUniform, SamplingStrategy::kSelfAdversarial,
        SamplingStrategy::kCommonsenseAware}) {
    for (const bool commonsense : {true, false}) {
      for (const bool categories : {true, false}) {
        SamplerConfig cfg;
        cfg.strategy = strategy;
        cfg.use_commonsense = commonsense;
        cfg.use_relation_categories = categories;
        cfg.pool_size = 16;
        const NegativeSampler sampler(*kg_, cs_, profiles_, cfg);
        Rng rng(9);
        for (const Triple& positive : kg_->train()) {
          const NegativeBatch batch = sampler.Sample(positive, params_, rng);
          EXPECT_EQ(batch.positive, positive);
          EXPECT_EQ(batch.head_corrupted.size(), cfg.negatives);
          EXPECT_EQ(batch.tail_corrupted.size(), cfg.negatives);
          for (const auto& neg : batch.head_corrupted) {
            EXPECT_NE(neg.triple.head, positive.head);
            EXPECT_EQ(neg.triple.relation, positive.relation);
            EXPECT_EQ(neg.triple.tail, positive.tail);
            EXPECT_FALSE(kg_->IsTrain(neg.triple));
            EXPECT_GE(neg.weight, 0.0);
            EXPECT_LE(neg.weight, 1.0);
          }
          for (const auto& neg : batch.tail_corrupted) {
            EXPECT_EQ(neg.triple.head, positive.head);
            EXPECT_NE(neg.triple.tail, positive.tail);
            EXPECT_FALSE(kg_->IsTrain(neg.triple));
            EXPECT_GE(neg.weight, 0.0);
            EXPECT_LE(neg.weight, 1.0);
          }
        }
      }
    }
  }
}

TEST_F(SamplerFixture, UniformWeightsAreOneOverN) {
  SamplerConfig cfg;
  cfg.strategy = SamplingStrategy::kUniform;
  const NegativeSampler sampler(*kg_, cs_, profiles_, cfg);
  Rng rng(4);
  const NegativeBatch batch = sampler.Sample(kg_->train()[0], params_, rng);
  for (const auto* side : {&batch.head_corrupted, &batch.tail_corrupted}) {
    ASSERT_EQ(side->size(), 2u);
    for (const auto& neg : *side) EXPECT_EQ(neg.weight, 0.5);
  }
}

TEST_F(SamplerFixture, EqualScoresGiveEqualWeights) {
  ModelParams flat = params_;
  std::fill(flat.entity_table.begin(), flat.entity_table.end(), 0.0);
  std::fill(flat.relation_table.begin(), flat.relation_table.end(), 0.0);
  const Triple positive = kg_->train()[0];
  std::vector<EntityId> pool;
  for (std::int32_t e = 0; pool.size() < 4; ++e) {
    if (EntityId(e) != positive.head && EntityId(e) != positive.tail) {
      pool.push_back(EntityId(e));
    }
  }
  SamplerConfig cfg;
  cfg.negatives = 4;
  const NegativeBatch batch =
      WeighNegatives(positive, pool, pool, flat, cfg, SideRoles{true, true});
  for (const auto& neg : batch.head_corrupted) EXPECT_EQ(neg.weight, 0.25);
  for (const auto& neg : batch.tail_corrupted) EXPECT_EQ(neg.weight, 0.25);
}

TEST_F(SamplerFixture, SelfAdversarialEqualsCansWithoutCommonsenseOrCategories) {
  SamplerConfig sadv;
  sadv.strategy = SamplingStrategy::kSelfAdversarial;
  SamplerConfig cans;
  cans.strategy = SamplingStrategy::kCommonsenseAware;
  cans.use_commonsense = false;
  cans.use_relation_categories = false;
  const NegativeSampler a(*kg_, cs_, profiles_, sadv);
  const NegativeSampler b(*kg_, cs_, profiles_, cans);
  Rng rng_a(77), rng_b(77);
  for (const Triple& positive : kg_->train()) {
    const NegativeBatch x = a.Sample(positive, params_, rng_a);
    const NegativeBatch y = b.Sample(positive, params_, rng_b);
    ASSERT_EQ(x.head_corrupted.size(), y.head_corrupted.size());
    ASSERT_EQ(x.tail_corrupted.size(), y.tail_corrupted.size());
    for (std::size_t i = 0; i < x.head_corrupted.size(); ++i) {
      EXPECT_EQ(x.head_corrupted[i].triple, y.head_corrupted[i].triple);
      EXPECT_EQ(x.head_corrupted[i].weight, y.head_corrupted[i].weight);
    }
    for (std::size_t i = 0; i < x.tail_corrupted.size(); ++i) {
      EXPECT_EQ(x.tail_corrupted[i].triple, y.tail_corrupted[i].triple);
      EXPECT_EQ(x.tail_corrupted[i].weight, y.tail_corrupted[i].weight);
    }
  }
}

TEST_F(SamplerFixture, WeightsAreMonotoneInPlausibility) {
  const Triple positive = kg_->train()[0];
  std::vector<EntityId> pool;
  for (std::int32_t e = 0; e < static_cast<std::int32_t>(kg_->num_entities()); ++e) {
    if (EntityId(e) != positive.head && EntityId(e) != positive.tail) {
      pool.push_back(EntityId(e));
    }
  }
  SamplerConfig cfg;
  cfg.negatives = pool.size();
  cfg.pool_size = pool.size();
  const NegativeBatch batch =
      WeighNegatives(positive, pool, pool, params_, cfg, SideRoles{true, false});
  auto check = [&](const std::vector<WeightedNegative>& negs, bool unique) {
    for (const auto& a : negs) {
      for (const auto& b : negs) {
        if (Score(params_, a.triple) < Score(params_, b.triple)) {
          if (unique) {
            EXPECT_GE(a.weight, b.weight);
          } else {
            EXPECT_LE(a.weight, b.weight);
          }
        }
      }
    }
  };
  check(batch.head_corrupted, true);
  check(batch.tail_corrupted, false);
}

TEST_F(SamplerFixture, TopNPicksHighestWeights) {
  const Triple positive = kg_->train()[0];
  std::vector<EntityId> pool;
  for (std::int32_t e = 0; pool.size() < 10; ++e) {
    if (EntityId(e) != positive.head) pool.push_back(EntityId(e));
  }
  SamplerConfig all;
  all.negatives = 10;
  all.pool_size = 10;
  SamplerConfig two;
  two.pool_size = 10;
  const auto full = WeighNegatives(positive, pool, pool, params_, all, {});
  const auto top = WeighNegatives(positive, pool, pool, params_, two, {});
  ASSERT_EQ(top.head_corrupted.size(), 2u);
  std::vector<double> weights;
  for (const auto& n : full.head_corrupted) weights.push_back(n.weight);
  std::sort(weights.rbegin(), weights.rend());
  EXPECT_EQ(top.head_corrupted[0].weight, weights[0]);
  EXPECT_EQ(top.head_corrupted[1].weight, weights[1]);
}

TEST_F(SamplerFixture, EnergyLogitsReverseTheRanking) {
  const Triple positive = kg_->train()[0];
  std::vector<EntityId> pool;
  for (std::int32_t e = 0; pool.size() < 6; ++e) {
    if (EntityId(e) != positive.head) pool.push_back(EntityId(e));
  }
  SamplerConfig cfg;
  cfg.negatives = 1;
  cfg.pool_size = 6;
  const auto plausibility = WeighNegatives(positive, pool, pool, params_, cfg, {});
  cfg.energy_logits = true;
  const auto literal = WeighNegatives(positive, pool, pool, params_, cfg, {});
  EXPECT_LE(Score(params_, plausibility.head_corrupted[0].triple),
            Score(params_, literal.head_corrupted[0].triple));
}

TEST(SamplerTest, DegeneratePoolFallsBackToUniform) {
  RawDataset raw;
  raw.train = {{"a", "r", "b", 1}, {"c", "s", "d", 2}, {"e", "s", "f", 3}};
  raw.concepts = {{"a", "lonely", 1}, {"b", "x", 2}, {"c", "y", 3},
                  {"d", "y", 4},      {"e", "y", 5}, {"f", "y", 6}};
  const KnowledgeGraph kg = KnowledgeGraph::Build(raw);
  const CommonsenseStore cs = BuildCommonsense(kg);
  const RelationProfiles profiles = ProfileRelations(kg);
  SamplerConfig cfg;
  cfg.pool_size = 4;
  const NegativeSampler sampler(kg, cs, profiles, cfg);
  const ModelParams params = InitParams(ModelKind::kTransE, kg.num_entities(),
                                        kg.num_relations(), 4, 12.0, 1);
  Rng rng(1);
  SamplerStats stats;
  // r is 1-1, so the head pool is the concept of "a", which holds only "a".
  const NegativeBatch batch = sampler.Sample(kg.train()[0], params, rng, &stats);
  EXPECT_GE(stats.uniform_fallbacks, 1u);
  EXPECT_EQ(batch.head_corrupted.size(), 2u);
  for (const auto& neg : batch.head_corrupted) {
    EXPECT_NE(neg.triple.head, kg.train()[0].head);
  }
}

TEST(SamplerTest, ConfigValidation) {
  SamplerConfig cfg;
  cfg.negatives = 0;
  EXPECT_THROW(cfg.Validate(), ConfigError);
  cfg.negatives = 8;
  cfg.pool_size = 4;
  EXPECT_THROW(cfg.Validate(), ConfigError);
  cfg.pool_size = 8;
  cfg.alpha = -1.0;
  EXPECT_THROW(cfg.Validate(), ConfigError);
  EXPECT_EQ(ParseStrategy("sadv"), SamplingStrategy::kSelfAdversarial);
  EXPECT_EQ(StrategyName(SamplingStrategy::kCommonsenseAware), "cans");
}

}  // namespace
}  // namespace ckge
