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

#ifndef CKGE_TRAINER_H_
#define CKGE_TRAINER_H_

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <unordered_map>
#include <vector>

#include "ckge/commonsense.h"
#include "ckge/knowledge_graph.h"
#include "ckge/link_prediction.h"
#include "ckge/model.h"
#include "ckge/sampler.h"

namespace ckge {

struct TrainConfig {
  double gamma = 12.0;
  double learning_rate = 1e-3;
  std::size_t batch_size = 1024;
  std::size_t max_steps = 100000;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
  // Validation every this many steps (0: only after the last step).
  std::size_t eval_every = 0;
  // Use only the first this many validation triples (0: all).
  std::size_t valid_limit = 0;
  // Mean loss is logged every this many steps.
  std::size_t log_every = 100;
  // Mode used for best-checkpoint selection.
  PredictionMode selection_mode = PredictionMode::kMultiView;
  std::uint64_t seed = 0;
  std::size_t workers = 1;

  void Validate() const;
};

// -log sigma(x) computed without overflow.
double NegLogSigmoid(double x);

// Weighted negative-sampling loss for one positive:
//   softplus(E(pos) - gamma)
//     + sum_i 0.5 * w_i * softplus(gamma - E(neg_i))
// over head and tail corruptions. Weights are constants.
double BatchLoss(const ModelParams& params, const NegativeBatch& batch,
                 double gamma);

// Sparse gradient keyed by table row. Row storage is stable while other
// rows are added.
class SparseGradient {
 public:
  SparseGradient(std::size_t entity_width, std::size_t relation_width);

  std::span<double> Entity(EntityId e);
  std::span<double> Relation(RelationId r);

  const std::unordered_map<std::int32_t, std::vector<double>>& entity_rows()
      const {
    return entity_rows_;
  }
  const std::unordered_map<std::int32_t, std::vector<double>>& relation_rows()
      const {
    return relation_rows_;
  }

  void Add(const SparseGradient& other);
  void Clear();

 private:
  std::size_t entity_width_;
  std::size_t relation_width_;
  std::unordered_map<std::int32_t, std::vector<double>> entity_rows_;
  std::unordered_map<std::int32_t, std::vector<double>> relation_rows_;
};

// Adds `scale * d BatchLoss / d params` into `grad` and returns the loss.
double AccumulateBatchGradient(const ModelParams& params,
                               const NegativeBatch& batch, double gamma,
                               double scale, SparseGradient& grad);

// Adaptive-moment optimizer that only touches rows present in the
// gradient. Bias correction uses the global step count and is folded into
// the step size; epsilon is added to the uncorrected second-moment root.
class AdamOptimizer {
 public:
  AdamOptimizer(const ModelParams& params, double learning_rate, double beta1,
                double beta2, double epsilon);

  void Step(ModelParams& params, const SparseGradient& grad);
  std::size_t steps() const { return steps_; }

 private:
  void UpdateRow(std::span<double> row, std::span<const double> g,
                 std::span<double> m, std::span<double> v, double step_size);

  double learning_rate_;
  double beta1_;
  double beta2_;
  double epsilon_;
  std::size_t steps_ = 0;
  std::vector<double> entity_m_;
  std::vector<double> entity_v_;
  std::vector<double> relation_m_;
  std::vector<double> relation_v_;
};

struct TrainLogRecord {
  std::size_t step = 0;
  double loss = 0.0;
  std::optional<double> valid_mrr;
};

struct TrainResult {
  ModelParams best;
  std::size_t best_step = 0;
  std::optional<double> best_valid_mrr;
  std::vector<TrainLogRecord> log;
  SamplerStats sampler_stats;
};

// Header line plus one `step<TAB>loss<TAB>valid_mrr` line per record;
// valid_mrr is `-` when no validation ran at that step.
void WriteTrainLog(std::span<const TrainLogRecord> log, std::ostream& out);

// Minibatch training. Positives are visited in a seeded per-epoch
// permutation; negatives for example i of step s come from the random
// stream DeriveSeed(seed, s, i), so results do not depend on the worker
// count except through floating-point summation order.
//
// Throws TrainingError if the loss becomes NaN or infinite.
TrainResult Train(const KnowledgeGraph& kg, const CommonsenseStore& cs,
                  const NegativeSampler& sampler, ModelParams initial,
                  const TrainConfig& cfg,
                  const std::function<void(const TrainLogRecord&)>& on_record =
                      nullptr);

}  // namespace ckge

#endif  // CKGE_TRAINER_H_
