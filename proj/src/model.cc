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

#include "ckge/model.h"

#include <cctype>
#include <cmath>
#include <numbers>

#include "ckge/random.h"

namespace ckge {
namespace {

double Sign(double x) { return (x > 0.0) - (x < 0.0); }

double TransEEnergy(std::span<const double> h, std::span<const double> r,
                    std::span<const double> t) {
  double sum = 0.0;
  for (std::size_t i = 0; i < r.size(); ++i) {
    sum += std::abs(h[i] + r[i] - t[i]);
  }
  return sum;
}

double DistMultEnergy(std::span<const double> h, std::span<const double> r,
                      std::span<const double> t) {
  double sum = 0.0;
  for (std::size_t i = 0; i < r.size(); ++i) sum += h[i] * r[i] * t[i];
  return -sum;
}

// `cos_r` / `sin_r` hold the precomputed rotation of each coordinate.
double RotatEEnergy(std::span<const double> h, std::span<const double> cos_r,
                    std::span<const double> sin_r, std::span<const double> t) {
  const std::size_t dim = cos_r.size();
  double sum = 0.0;
  for (std::size_t i = 0; i < dim; ++i) {
    const double re = h[i] * cos_r[i] - h[dim + i] * sin_r[i] - t[i];
    const double im = h[i] * sin_r[i] + h[dim + i] * cos_r[i] - t[dim + i];
    sum += std::sqrt(re * re + im * im);
  }
  return sum;
}

void Rotation(std::span<const double> phases, std::vector<double>& cos_r,
              std::vector<double>& sin_r) {
  cos_r.resize(phases.size());
  sin_r.resize(phases.size());
  for (std::size_t i = 0; i < phases.size(); ++i) {
    cos_r[i] = std::cos(phases[i]);
    sin_r[i] = std::sin(phases[i]);
  }
}

}  // namespace

std::string_view ModelKindName(ModelKind kind) {
  switch (kind) {
    case ModelKind::kTransE:
      return "TransE";
    case ModelKind::kRotatE:
      return "RotatE";
    case ModelKind::kDistMult:
      return "DistMult";
  }
  return "?";
}

std::optional<ModelKind> ParseModelKind(std::string_view name) {
  for (auto kind :
       {ModelKind::kTransE, ModelKind::kRotatE, ModelKind::kDistMult}) {
    const auto canonical = ModelKindName(kind);
    if (name.size() != canonical.size()) continue;
    bool same = true;
    for (std::size_t i = 0; i < name.size(); ++i) {
      same &= std::tolower(static_cast<unsigned char>(name[i])) ==
              std::tolower(static_cast<unsigned char>(canonical[i]));
    }
    if (same) return kind;
  }
  return std::nullopt;
}

double InitBound(double gamma, std::size_t dim) {
  return (gamma + kInitEpsilon) / static_cast<double>(dim);
}

ModelParams InitParams(ModelKind kind, std::size_t num_entities,
                       std::size_t num_relations, std::size_t dim,
                       double gamma, std::uint64_t seed) {
  ModelParams params;
  params.kind = kind;
  params.num_entities = num_entities;
  params.num_relations = num_relations;
  params.dim = dim;
  params.gamma = gamma;
  params.seed = seed;
  params.entity_table.resize(num_entities * params.entity_width());
  params.relation_table.resize(num_relations * dim);

  const double bound = InitBound(gamma, dim);
  Rng entity_rng(DeriveSeed(seed, 1));
  for (double& x : params.entity_table) {
    x = (2.0 * entity_rng.Uniform() - 1.0) * bound;
  }
  Rng relation_rng(DeriveSeed(seed, 2));
  for (double& x : params.relation_table) {
    if (kind == ModelKind::kRotatE) {
      x = (2.0 * relation_rng.Uniform() - 1.0) * std::numbers::pi;
    } else {
      x = (2.0 * relation_rng.Uniform() - 1.0) * bound;
    }
  }
  return params;
}

double ScoreRows(ModelKind kind, std::span<const double> head,
                 std::span<const double> relation,
                 std::span<const double> tail) {
  switch (kind) {
    case ModelKind::kTransE:
      return TransEEnergy(head, relation, tail);
    case ModelKind::kDistMult:
      return DistMultEnergy(head, relation, tail);
    case ModelKind::kRotatE: {
      std::vector<double> cos_r;
      std::vector<double> sin_r;
      Rotation(relation, cos_r, sin_r);
      return RotatEEnergy(head, cos_r, sin_r, tail);
    }
  }
  return 0.0;
}

double Score(const ModelParams& params, const Triple& t) {
  return ScoreRows(params.kind, params.entity(t.head),
                   params.relation(t.relation), params.entity(t.tail));
}

void AccumulateScoreGradient(ModelKind kind, std::span<const double> h,
                             std::span<const double> r,
                             std::span<const double> t, double scale,
                             std::span<double> gh, std::span<double> gr,
                             std::span<double> gt) {
  const std::size_t dim = r.size();
  switch (kind) {
    case ModelKind::kTransE:
      for (std::size_t i = 0; i < dim; ++i) {
        const double s = scale * Sign(h[i] + r[i] - t[i]);
        gh[i] += s;
        gr[i] += s;
        gt[i] -= s;
      }
      break;
    case ModelKind::kDistMult:
      for (std::size_t i = 0; i < dim; ++i) {
        gh[i] -= scale * r[i] * t[i];
        gr[i] -= scale * h[i] * t[i];
        gt[i] -= scale * h[i] * r[i];
      }
      break;
    case ModelKind::kRotatE:
      for (std::size_t i = 0; i < dim; ++i) {
        const double c = std::cos(r[i]);
        const double s = std::sin(r[i]);
        const double h_re = h[i];
        const double h_im = h[dim + i];
        const double re = h_re * c - h_im * s - t[i];
        const double im = h_re * s + h_im * c - t[dim + i];
        const double modulus = std::sqrt(re * re + im * im);
        if (modulus == 0.0) continue;
        const double a = scale * re / modulus;
        const double b = scale * im / modulus;
        gh[i] += a * c + b * s;
        gh[dim + i] += -a * s + b * c;
        gr[i] += a * (-h_re * s - h_im * c) + b * (h_re * c - h_im * s);
        gt[i] -= a;
        gt[dim + i] -= b;
      }
      break;
  }
}

ScoreGradient ScoreGradients(const ModelParams& params, const Triple& t) {
  ScoreGradient g;
  g.head.assign(params.entity_width(), 0.0);
  g.relation.assign(params.relation_width(), 0.0);
  g.tail.assign(params.entity_width(), 0.0);
  AccumulateScoreGradient(params.kind, params.entity(t.head),
                          params.relation(t.relation), params.entity(t.tail),
                          1.0, g.head, g.relation, g.tail);
  return g;
}

void ScoreAllCandidates(const ModelParams& params, const Triple& query,
                        Side side, std::span<double> energies) {
  const auto rel = params.relation(query.relation);
  const bool tail_side = side == Side::kTail;
  if (params.kind == ModelKind::kRotatE) {
    std::vector<double> cos_r;
    std::vector<double> sin_r;
    Rotation(rel, cos_r, sin_r);
    const auto fixed = params.entity(tail_side ? query.head : query.tail);
    for (std::size_t e = 0; e < params.num_entities; ++e) {
      const auto cand = params.entity(EntityId(static_cast<std::int32_t>(e)));
      energies[e] = tail_side ? RotatEEnergy(fixed, cos_r, sin_r, cand)
                              : RotatEEnergy(cand, cos_r, sin_r, fixed);
    }
    return;
  }
  const auto fixed = params.entity(tail_side ? query.head : query.tail);
  for (std::size_t e = 0; e < params.num_entities; ++e) {
    const auto cand = params.entity(EntityId(static_cast<std::int32_t>(e)));
    energies[e] = tail_side ? ScoreRows(params.kind, fixed, rel, cand)
                            : ScoreRows(params.kind, cand, rel, fixed);
  }
}

void CanonicalizePhases(ModelParams& params) {
  if (params.kind != ModelKind::kRotatE) return;
  constexpr double kTwoPi = 2.0 * std::numbers::pi;
  for (double& x : params.relation_table) {
    x -= kTwoPi * std::floor((x + std::numbers::pi) / kTwoPi);
  }
}

}  // namespace ckge
