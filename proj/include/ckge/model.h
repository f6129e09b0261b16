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

#ifndef CKGE_MODEL_H_
#define CKGE_MODEL_H_

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "ckge/ids.h"

namespace ckge {

enum class ModelKind : std::uint32_t { kTransE = 0, kRotatE = 1, kDistMult = 2 };

std::string_view ModelKindName(ModelKind kind);
std::optional<ModelKind> ParseModelKind(std::string_view name);

// Offset added to gamma when sizing the initialization range.
inline constexpr double kInitEpsilon = 2.0;

// Dense embedding tables.
//
// TransE and DistMult rows are `dim` reals. RotatE entity rows are `2 * dim`
// reals (real parts, then imaginary parts) and relation rows are `dim`
// phases, so every relation coordinate is a unit complex number e^{i theta}.
struct ModelParams {
  ModelKind kind = ModelKind::kTransE;
  std::size_t num_entities = 0;
  std::size_t num_relations = 0;
  std::size_t dim = 0;
  double gamma = 0.0;
  std::uint64_t seed = 0;
  std::vector<double> entity_table;
  std::vector<double> relation_table;

  std::size_t entity_width() const {
    return kind == ModelKind::kRotatE ? 2 * dim : dim;
  }
  std::size_t relation_width() const { return dim; }

  std::span<double> entity(EntityId e) {
    return {entity_table.data() + e.index() * entity_width(), entity_width()};
  }
  std::span<const double> entity(EntityId e) const {
    return {entity_table.data() + e.index() * entity_width(), entity_width()};
  }
  std::span<double> relation(RelationId r) {
    return {relation_table.data() + r.index() * dim, dim};
  }
  std::span<const double> relation(RelationId r) const {
    return {relation_table.data() + r.index() * dim, dim};
  }

  bool operator==(const ModelParams&) const = default;
};

// Uniform initialization. Entity entries (and TransE/DistMult relation
// entries) are drawn from [-(gamma + 2) / dim, (gamma + 2) / dim]; RotatE
// phases from [-pi, pi). Bit-identical for a fixed seed.
ModelParams InitParams(ModelKind kind, std::size_t num_entities,
                       std::size_t num_relations, std::size_t dim,
                       double gamma, std::uint64_t seed);

double InitBound(double gamma, std::size_t dim);

// Energy of a triple; lower is more plausible.
//   TransE:   sum_i |h_i + r_i - t_i|
//   RotatE:   sum_i |h_i * e^{i theta_i} - t_i|   (complex modulus)
//   DistMult: -sum_i h_i r_i t_i
double ScoreRows(ModelKind kind, std::span<const double> head,
                 std::span<const double> relation,
                 std::span<const double> tail);

double Score(const ModelParams& params, const Triple& t);

// Adds `scale * dE/d(row)` into the three gradient rows. At L1 kinks the
// subgradient 0 is used.
void AccumulateScoreGradient(ModelKind kind, std::span<const double> head,
                             std::span<const double> relation,
                             std::span<const double> tail, double scale,
                             std::span<double> grad_head,
                             std::span<double> grad_relation,
                             std::span<double> grad_tail);

struct ScoreGradient {
  std::vector<double> head;
  std::vector<double> relation;
  std::vector<double> tail;
};

// Partial derivatives of Score with respect to the three rows the triple
// touches. When head == tail the two entity partials are reported
// separately; callers that update tables must sum them.
ScoreGradient ScoreGradients(const ModelParams& params, const Triple& t);

// Energies of `query` with every entity substituted on `side`.
void ScoreAllCandidates(const ModelParams& params, const Triple& query,
                        Side side, std::span<double> energies);

// Wraps RotatE phases into [-pi, pi). No-op for other kinds.
void CanonicalizePhases(ModelParams& params);

}  // namespace ckge

#endif  // CKGE_MODEL_H_
