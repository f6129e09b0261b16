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

#include "ckge/trainer.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <ostream>
#include <thread>

#include <fmt/core.h>

#include "ckge/error.h"
#include "ckge/random.h"

namespace ckge {
namespace {

constexpr std::uint64_t kEpochStream = 0x5EED;

double WrapPhase(double x) {
  constexpr double kTwoPi = 2.0 * std::numbers::pi;
  return x - kTwoPi * std::floor((x + std::numbers::pi) / kTwoPi);
}

double Sigmoid(double x) {
  if (x >= 0.0) return 1.0 / (1.0 + std::exp(-x));
  const double e = std::exp(x);
  return e / (1.0 + e);
}

void AccumulateTriple(const ModelParams& params, const Triple& t, double scale,
                      SparseGradient& grad) {
  auto gh = grad.Entity(t.head);
  auto gr = grad.Relation(t.relation);
  auto gt = grad.Entity(t.tail);
  AccumulateScoreGradient(params.kind, params.entity(t.head),
                          params.relation(t.relation), params.entity(t.tail),
                          scale, gh, gr, gt);
}

std::vector<std::size_t> Permutation(std::size_t n, std::uint64_t seed,
                                     std::size_t epoch) {
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  Rng rng(DeriveSeed(seed, kEpochStream, epoch));
  for (std::size_t i = n; i > 1; --i) {
    std::swap(order[i - 1], order[rng.Below(i)]);
  }
  return order;
}

struct WorkerState {
  SparseGradient grad;
  double loss = 0.0;
  SamplerStats stats;
};

}  // namespace

void TrainConfig::Validate() const {
  if (batch_size == 0) throw ConfigError("batch_size must be >= 1");
  if (max_steps == 0) throw ConfigError("max_steps must be >= 1");
  if (!(learning_rate > 0.0)) throw ConfigError("learning_rate must be > 0");
  if (!(beta1 >= 0.0 && beta1 < 1.0) || !(beta2 >= 0.0 && beta2 < 1.0)) {
    throw ConfigError("adam betas must lie in [0, 1)");
  }
  if (!(epsilon > 0.0)) throw ConfigError("epsilon must be > 0");
  if (workers == 0) throw ConfigError("workers must be >= 1");
}

double NegLogSigmoid(double x) {
  // softplus(-x)
  if (x < 0.0) return -x + std::log1p(std::exp(x));
  return std::log1p(std::exp(-x));
}

double BatchLoss(const ModelParams& params, const NegativeBatch& batch,
                 double gamma) {
  double loss = NegLogSigmoid(gamma - Score(params, batch.positive));
  for (const auto* side : {&batch.head_corrupted, &batch.tail_corrupted}) {
    for (const auto& neg : *side) {
      loss += 0.5 * neg.weight *
              NegLogSigmoid(Score(params, neg.triple) - gamma);
    }
  }
  return loss;
}

SparseGradient::SparseGradient(std::size_t entity_width,
                               std::size_t relation_width)
    : entity_width_(entity_width), relation_width_(relation_width) {}

std::span<double> SparseGradient::Entity(EntityId e) {
  auto [it, inserted] = entity_rows_.try_emplace(e.value());
  if (inserted) it->second.assign(entity_width_, 0.0);
  return it->second;
}

std::span<double> SparseGradient::Relation(RelationId r) {
  auto [it, inserted] = relation_rows_.try_emplace(r.value());
  if (inserted) it->second.assign(relation_width_, 0.0);
  return it->second;
}

void SparseGradient::Add(const SparseGradient& other) {
  for (const auto& [row, values] : other.entity_rows_) {
    auto target = Entity(EntityId(row));
    for (std::size_t i = 0; i < values.size(); ++i) target[i] += values[i];
  }
  for (const auto& [row, values] : other.relation_rows_) {
    auto target = Relation(RelationId(row));
    for (std::size_t i = 0; i < values.size(); ++i) target[i] += values[i];
  }
}

void SparseGradient::Clear() {
  entity_rows_.clear();
  relation_rows_.clear();
}

double AccumulateBatchGradient(const ModelParams& params,
                               const NegativeBatch& batch, double gamma,
                               double scale, SparseGradient& grad) {
  const double positive_energy = Score(params, batch.positive);
  double loss = NegLogSigmoid(gamma - positive_energy);
  // d/dE softplus(E - gamma) = sigmoid(E - gamma)
  AccumulateTriple(params, batch.positive,
                   scale * Sigmoid(positive_energy - gamma), grad);
  for (const auto* side : {&batch.head_corrupted, &batch.tail_corrupted}) {
    for (const auto& neg : *side) {
      const double energy = Score(params, neg.triple);
      loss += 0.5 * neg.weight * NegLogSigmoid(energy - gamma);
      // d/dE softplus(gamma - E) = -sigmoid(gamma - E)
      AccumulateTriple(params, neg.triple,
                       -scale * 0.5 * neg.weight * Sigmoid(gamma - energy),
                       grad);
    }
  }
  return loss;
}

AdamOptimizer::AdamOptimizer(const ModelParams& params, double learning_rate,
                             double beta1, double beta2, double epsilon)
    : learning_rate_(learning_rate),
      beta1_(beta1),
      beta2_(beta2),
      epsilon_(epsilon),
      entity_m_(params.entity_table.size(), 0.0),
      entity_v_(params.entity_table.size(), 0.0),
      relation_m_(params.relation_table.size(), 0.0),
      relation_v_(params.relation_table.size(), 0.0) {}

void AdamOptimizer::UpdateRow(std::span<double> row, std::span<const double> g,
                              std::span<double> m, std::span<double> v,
                              double step_size) {
  for (std::size_t i = 0; i < row.size(); ++i) {
    m[i] = beta1_ * m[i] + (1.0 - beta1_) * g[i];
    v[i] = beta2_ * v[i] + (1.0 - beta2_) * g[i] * g[i];
    row[i] -= step_size * m[i] / (std::sqrt(v[i]) + epsilon_);
  }
}

void AdamOptimizer::Step(ModelParams& params, const SparseGradient& grad) {
  ++steps_;
  const double t = static_cast<double>(steps_);
  const double step_size = learning_rate_ *
                           std::sqrt(1.0 - std::pow(beta2_, t)) /
                           (1.0 - std::pow(beta1_, t));
  const std::size_t ew = params.entity_width();
  for (const auto& [row, g] : grad.entity_rows()) {
    const std::size_t offset = static_cast<std::size_t>(row) * ew;
    UpdateRow(params.entity(EntityId(row)), g,
              std::span(entity_m_).subspan(offset, ew),
              std::span(entity_v_).subspan(offset, ew), step_size);
  }
  const std::size_t rw = params.relation_width();
  for (const auto& [row, g] : grad.relation_rows()) {
    const std::size_t offset = static_cast<std::size_t>(row) * rw;
    UpdateRow(params.relation(RelationId(row)), g,
              std::span(relation_m_).subspan(offset, rw),
              std::span(relation_v_).subspan(offset, rw), step_size);
  }
}

void WriteTrainLog(std::span<const TrainLogRecord> log, std::ostream& out) {
  out << "# step\tloss\tvalid_mrr\n";
  for (const auto& rec : log) {
    out << fmt::format("{}\t{:.9g}\t{}\n", rec.step, rec.loss,
                       rec.valid_mrr ? fmt::format("{:.6f}", *rec.valid_mrr)
                                     : std::string("-"));
  }
}

TrainResult Train(const KnowledgeGraph& kg, const CommonsenseStore& cs,
                  const NegativeSampler& sampler, ModelParams initial,
                  const TrainConfig& cfg,
                  const std::function<void(const TrainLogRecord&)>& on_record) {
  cfg.Validate();
  const auto positives = kg.train();
  if (positives.empty()) throw TrainingError("train split is empty");
  auto valid = kg.valid();
  if (cfg.valid_limit > 0 && valid.size() > cfg.valid_limit) {
    valid = valid.first(cfg.valid_limit);
  }

  TrainResult result;
  ModelParams params = std::move(initial);
  AdamOptimizer adam(params, cfg.learning_rate, cfg.beta1, cfg.beta2,
                     cfg.epsilon);

  std::size_t epoch = 0;
  std::size_t cursor = 0;
  auto order = Permutation(positives.size(), cfg.seed, epoch);

  const std::size_t workers = std::min(cfg.workers, cfg.batch_size);
  std::vector<WorkerState> state;
  for (std::size_t w = 0; w < workers; ++w) {
    state.push_back({SparseGradient(params.entity_width(), params.dim), 0.0, {}});
  }
  SparseGradient total(params.entity_width(), params.dim);
  std::vector<std::size_t> batch(cfg.batch_size);

  double window_loss = 0.0;
  std::size_t window_steps = 0;

  for (std::size_t step = 1; step <= cfg.max_steps; ++step) {
    for (auto& slot : batch) {
      if (cursor == order.size()) {
        order = Permutation(positives.size(), cfg.seed, ++epoch);
        cursor = 0;
      }
      slot = order[cursor++];
    }

    const double scale = 1.0 / static_cast<double>(batch.size());
    auto run = [&](std::size_t w, std::size_t begin, std::size_t end) {
      WorkerState& ws = state[w];
      ws.grad.Clear();
      ws.loss = 0.0;
      for (std::size_t i = begin; i < end; ++i) {
        Rng rng(DeriveSeed(cfg.seed, step, i));
        const NegativeBatch negatives =
            sampler.Sample(positives[batch[i]], params, rng, &ws.stats);
        ws.loss += AccumulateBatchGradient(params, negatives, cfg.gamma, scale,
                                           ws.grad);
      }
    };
    const std::size_t chunk = (batch.size() + workers - 1) / workers;
    if (workers == 1) {
      run(0, 0, batch.size());
    } else {
      std::vector<std::jthread> threads;
      for (std::size_t w = 0; w < workers; ++w) {
        const std::size_t begin = std::min(batch.size(), w * chunk);
        const std::size_t end = std::min(batch.size(), begin + chunk);
        threads.emplace_back(run, w, begin, end);
      }
    }

    double step_loss = 0.0;
    total.Clear();
    for (auto& ws : state) {
      step_loss += ws.loss;
      total.Add(ws.grad);
    }
    step_loss *= scale;
    if (!std::isfinite(step_loss)) {
      throw TrainingError(fmt::format(
          "loss diverged ({}) at step {} with learning_rate {}", step_loss,
          step, cfg.learning_rate));
    }

    adam.Step(params, total);
    if (params.kind == ModelKind::kRotatE) {
      for (const auto& [row, g] : total.relation_rows()) {
        for (double& x : params.relation(RelationId(row))) x = WrapPhase(x);
      }
    }

    window_loss += step_loss;
    ++window_steps;
    const bool last = step == cfg.max_steps;
    const bool eval_now =
        !valid.empty() &&
        (last || (cfg.eval_every > 0 && step % cfg.eval_every == 0));
    const bool log_now =
        eval_now || last || (cfg.log_every > 0 && step % cfg.log_every == 0);
    if (!log_now) continue;

    TrainLogRecord rec;
    rec.step = step;
    rec.loss = window_loss / static_cast<double>(window_steps);
    window_loss = 0.0;
    window_steps = 0;
    if (eval_now) {
      rec.valid_mrr =
          Evaluate(valid, params, cs, kg, cfg.selection_mode, cfg.workers).mrr;
      if (!result.best_valid_mrr || *rec.valid_mrr > *result.best_valid_mrr) {
        result.best_valid_mrr = rec.valid_mrr;
        result.best = params;
        result.best_step = step;
      }
    }
    result.log.push_back(rec);
    if (on_record) on_record(rec);
  }

  if (!result.best_valid_mrr) {
    result.best = std::move(params);
    result.best_step = cfg.max_steps;
  }
  for (const auto& ws : state) result.sampler_stats += ws.stats;
  return result;
}

}  // namespace ckge
