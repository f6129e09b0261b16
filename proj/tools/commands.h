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

#ifndef CKGE_TOOLS_COMMANDS_H_
#define CKGE_TOOLS_COMMANDS_H_

#include <filesystem>
#include <iosfwd>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "ckge/commonsense.h"
#include "ckge/dataset.h"
#include "ckge/knowledge_graph.h"
#include "ckge/link_prediction.h"
#include "ckge/relation_profile.h"
#include "ckge/run_config.h"
#include "ckge/trainer.h"

namespace ckge::cli {

// Dataset plus everything derived from its training split.
struct Workspace {
  DatasetManifest manifest;
  RawDataset raw;
  KnowledgeGraph kg;
  CommonsenseStore commonsense;
  RelationProfiles profiles;
};

std::unique_ptr<Workspace> LoadWorkspace(const RunConfig& cfg);

inline constexpr const char* kCheckpointFile = "checkpoint.bin";
inline constexpr const char* kTrainLogFile = "train.log";
inline constexpr const char* kMetricsFile = "metrics.tsv";

// Writes c1.tsv, c2.txt, relation_profiles.tsv and validate.txt into
// cfg.output_dir.
void CmdPrepare(const RunConfig& cfg, std::ostream& out);

// Trains and writes the selected checkpoint and the loss log into
// cfg.output_dir.
TrainResult CmdTrain(const RunConfig& cfg, std::ostream& out);

// Loads a checkpoint and checks it against the config and dataset.
ModelParams LoadCompatibleCheckpoint(const RunConfig& cfg, const KnowledgeGraph& kg,
                                     const std::filesystem::path& path);

enum class EvalSplit { kValid, kTest };

// Prints a metrics table (header plus one row) and writes it to
// cfg.output_dir/metrics.tsv. Columns: model, mode, MR, MRR, Hits@1,
// Hits@3, Hits@10.
Metrics CmdEval(const RunConfig& cfg, const std::filesystem::path& checkpoint,
                EvalSplit split, std::ostream& out);

std::string MetricsHeader();
std::string MetricsRow(std::string_view model, std::string_view mode,
                       const Metrics& m);

// Query is `head relation ?` or `? relation tail`.
struct ParsedQuery {
  Triple triple;
  Side missing = Side::kTail;
};
ParsedQuery ParseQuery(std::string_view text, const KnowledgeGraph& kg);

Explanation CmdPredict(const RunConfig& cfg,
                       const std::filesystem::path& checkpoint,
                       std::string_view query, std::size_t top_k,
                       std::ostream& out);

struct ComparisonRow {
  SamplingStrategy strategy;
  Metrics metrics;
};

// Trains one model per sampling strategy (uniform, self-adversarial,
// commonsense-aware) from the same config and seed, evaluates each on the
// test split with fact-only ranking, and prints one row per strategy.
std::vector<ComparisonRow> CmdCompareNs(const RunConfig& cfg, std::ostream& out);

}  // namespace ckge::cli

#endif  // CKGE_TOOLS_COMMANDS_H_
