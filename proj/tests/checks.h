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

// End-to-end property checks shared by the unit tests and the acceptance
// binary. Each returns measured quantities; callers apply tolerances.

#ifndef CKGE_TESTS_CHECKS_H_
#define CKGE_TESTS_CHECKS_H_

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "ckge/model.h"

namespace ckge::checks {

struct OracleReport {
  std::size_t c1_mismatches = 0;
  std::size_t c2_mismatches = 0;
  std::size_t profile_mismatches = 0;
  std::size_t candidate_mismatches = 0;
  std::size_t rank_mismatches = 0;
  std::size_t metric_mismatches = 0;
  std::size_t queries = 0;
  std::vector<std::string> notes;

  bool ok() const {
    return c1_mismatches + c2_mismatches + profile_mismatches +
               candidate_mismatches + rank_mismatches + metric_mismatches ==
           0;
  }
};

// Compares commonsense, relation profiles, candidate partitions, filtered
// ranks (both prediction modes, all model kinds) and metrics on the test
// split of `dir` against the brute-force oracle.
OracleReport CompareWithOracle(const std::filesystem::path& dir,
                               std::uint64_t seed);

struct WeightReport {
  double max_sum_error = 0.0;        // |sum p - 1|
  double max_unique_error = 0.0;     // unique-side weight vs p
  double max_nonunique_error = 0.0;  // other-side weight vs 1 - p
  std::size_t pools = 0;
};

WeightReport CheckNegativeWeights(std::uint64_t seed, std::size_t pools);

struct GradientReport {
  double max_relative_error = 0.0;
  std::size_t checked = 0;
  std::size_t skipped_near_kink = 0;
};

// Central differences of the training loss against the analytical
// gradient for `triples` random positives, each with two weighted head and
// two weighted tail corruptions.
GradientReport CheckLossGradient(ModelKind kind, std::size_t dim,
                                 std::size_t triples, std::uint64_t seed,
                                 double epsilon = 1e-5);

// Largest deviation of the score identity for `kind`:
//   TransE    E(h + v, r, t + v) = E(h, r, t)
//   RotatE    E(h, r, t) = E(t, -r, h)
//   DistMult  dE/dh at (h, r, t) = dE/dt at (t, r, h), and E symmetric
double ScoreIdentityDeviation(ModelKind kind, std::size_t dim,
                              std::size_t samples, std::uint64_t seed);

struct DeterminismReport {
  bool checkpoints_identical = false;
  bool metrics_identical = false;
  double mrr = 0.0;
};

// Trains twice with one worker and identical config; compares checkpoint
// bytes and test metrics bit for bit.
DeterminismReport CheckDeterminism(const std::filesystem::path& dir,
                                   ModelKind kind, std::uint64_t seed);

struct ExplanationReport {
  std::size_t queries = 0;
  std::size_t cited = 0;
  std::size_t unsound = 0;
  std::size_t fallback_queries = 0;
};

// Explains `queries` random test queries with a briefly trained model and
// checks every cited commonsense triple against an oracle C1.
ExplanationReport CheckExplanations(const std::filesystem::path& dir,
                                    std::size_t queries, std::uint64_t seed);

}  // namespace ckge::checks

#endif  // CKGE_TESTS_CHECKS_H_
