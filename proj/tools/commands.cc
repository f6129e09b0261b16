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

#include "commands.h"

#include <fstream>
#include <ostream>
#include <sstream>

#include <fmt/core.h>

#include "ckge/checkpoint.h"
#include "ckge/error.h"
#include "ckge/sampler.h"

namespace ckge::cli {
namespace {

std::ofstream OpenOutput(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError(fmt::format("cannot write {}", path.string()));
  return out;
}

void EnsureOutputDir(const RunConfig& cfg) {
  std::error_code ec;
  std::filesystem::create_directories(cfg.output_dir, ec);
  if (ec) {
    throw ConfigError(fmt::format("cannot create {}: {}",
                                  cfg.output_dir.string(), ec.message()));
  }
}

TrainResult TrainModel(const RunConfig& cfg, const Workspace& ws,
                       std::ostream& out) {
  const NegativeSampler sampler(ws.kg, ws.commonsense, ws.profiles,
                                cfg.sampler);
  ModelParams init =
      InitParams(cfg.model, ws.kg.num_entities(), ws.kg.num_relations(),
                 cfg.dim, cfg.train.gamma, cfg.seed);
  return Train(ws.kg, ws.commonsense, sampler, std::move(init),
               cfg.EffectiveTrainConfig(), [&out](const TrainLogRecord& rec) {
                 out << fmt::format("step {} loss {:.6f}", rec.step, rec.loss);
                 if (rec.valid_mrr) {
                   out << fmt::format(" valid_mrr {:.4f}", *rec.valid_mrr);
                 }
                 out << '\n';
               });
}

}  // namespace

std::unique_ptr<Workspace> LoadWorkspace(const RunConfig& cfg) {
  DatasetManifest manifest = ResolveManifest(cfg.dataset);
  RawDataset raw = LoadDataset(manifest);
  KnowledgeGraph kg = KnowledgeGraph::Build(raw);
  CommonsenseStore cs = BuildCommonsense(kg);
  RelationProfiles profiles = ProfileRelations(kg, cfg.category_threshold);
  return std::unique_ptr<Workspace>(
      new Workspace{std::move(manifest), std::move(raw), std::move(kg),
                    std::move(cs), std::move(profiles)});
}

void CmdPrepare(const RunConfig& cfg, std::ostream& out) {
  const auto ws = LoadWorkspace(cfg);
  EnsureOutputDir(cfg);
  {
    auto f = OpenOutput(cfg.output_dir / "c1.tsv");
    WriteIndividualForm(ws->commonsense, ws->kg, f);
  }
  {
    auto f = OpenOutput(cfg.output_dir / "c2.txt");
    WriteSetForm(ws->commonsense, ws->kg, f);
  }
  {
    auto f = OpenOutput(cfg.output_dir / "relation_profiles.tsv");
    WriteRelationProfiles(ws->profiles, ws->kg, f);
  }
  const ValidationReport report = Validate(ws->raw, ws->kg);
  {
    auto f = OpenOutput(cfg.output_dir / "validate.txt");
    f << FormatValidationReport(report);
  }
  out << fmt::format(
      "entities {} relations {} concepts {} train {} valid {} test {}\n",
      ws->kg.num_entities(), ws->kg.num_relations(), ws->kg.num_concepts(),
      ws->kg.train().size(), ws->kg.valid().size(), ws->kg.test().size());
  out << fmt::format("concept triples {} relation profiles {}\n",
                     ws->commonsense.individual().size(), ws->profiles.size());
  if (!report.clean()) out << "validation reported issues, see validate.txt\n";
}

TrainResult CmdTrain(const RunConfig& cfg, std::ostream& out) {
  cfg.Validate();
  const auto ws = LoadWorkspace(cfg);
  EnsureOutputDir(cfg);
  TrainResult result = TrainModel(cfg, *ws, out);
  SaveCheckpoint(result.best, cfg.output_dir / kCheckpointFile);
  auto log = OpenOutput(cfg.output_dir / kTrainLogFile);
  WriteTrainLog(result.log, log);
  out << fmt::format("best step {}", result.best_step);
  if (result.best_valid_mrr) {
    out << fmt::format(" valid_mrr {:.4f}", *result.best_valid_mrr);
  }
  out << '\n';
  return result;
}

ModelParams LoadCompatibleCheckpoint(const RunConfig& cfg,
                                     const KnowledgeGraph& kg,
                                     const std::filesystem::path& path) {
  ModelParams params = LoadCheckpoint(path);
  if (params.kind != cfg.model) {
    throw CheckpointError(fmt::format(
        "{} holds a {} model but the config asks for {}", path.string(),
        ModelKindName(params.kind), ModelKindName(cfg.model)));
  }
  if (params.num_entities != kg.num_entities() ||
      params.num_relations != kg.num_relations()) {
    throw CheckpointError(fmt::format(
        "{} has {} entities and {} relations, dataset has {} and {}",
        path.string(), params.num_entities, params.num_relations,
        kg.num_entities(), kg.num_relations()));
  }
  return params;
}

std::string MetricsHeader() { return "model\tmode\tMR\tMRR\tHits@1\tHits@3\tHits@10"; }

std::string MetricsRow(std::string_view model, std::string_view mode,
                       const Metrics& m) {
  return fmt::format("{}\t{}\t{:.3f}\t{:.6f}\t{:.6f}\t{:.6f}\t{:.6f}", model,
                     mode, m.mr, m.mrr, m.hits1, m.hits3, m.hits10);
}

Metrics CmdEval(const RunConfig& cfg, const std::filesystem::path& checkpoint,
                EvalSplit split, std::ostream& out) {
  const auto ws = LoadWorkspace(cfg);
  const ModelParams params = LoadCompatibleCheckpoint(cfg, ws->kg, checkpoint);
  const auto triples =
      split == EvalSplit::kTest ? ws->kg.test() : ws->kg.valid();
  const Metrics m = Evaluate(triples, params, ws->commonsense, ws->kg,
                             cfg.mode, cfg.workers);
  const std::string table =
      MetricsHeader() + "\n" +
      MetricsRow(ModelKindName(cfg.model), PredictionModeName(cfg.mode), m) +
      "\n";
  out << table;
  EnsureOutputDir(cfg);
  auto f = OpenOutput(cfg.output_dir / kMetricsFile);
  f << table;
  return m;
}

ParsedQuery ParseQuery(std::string_view text, const KnowledgeGraph& kg) {
  std::istringstream in{std::string(text)};
  std::vector<std::string> tokens;
  for (std::string tok; in >> tok;) tokens.push_back(tok);
  if (tokens.size() != 3) {
    throw QueryError(fmt::format(
        "query '{}' must have three fields: head relation ? or ? relation tail",
        text));
  }
  const bool head_missing = tokens[0] == "?";
  const bool tail_missing = tokens[2] == "?";
  if (head_missing == tail_missing) {
    throw QueryError(
        fmt::format("query '{}' must have exactly one '?' at head or tail", text));
  }
  ParsedQuery q;
  q.triple.relation = kg.RelationByLabel(tokens[1]);
  if (tail_missing) {
    q.missing = Side::kTail;
    q.triple.head = kg.EntityByLabel(tokens[0]);
  } else {
    q.missing = Side::kHead;
    q.triple.tail = kg.EntityByLabel(tokens[2]);
  }
  return q;
}

Explanation CmdPredict(const RunConfig& cfg,
                       const std::filesystem::path& checkpoint,
                       std::string_view query, std::size_t top_k,
                       std::ostream& out) {
  const auto ws = LoadWorkspace(cfg);
  const ModelParams params = LoadCompatibleCheckpoint(cfg, ws->kg, checkpoint);
  const ParsedQuery q = ParseQuery(query, ws->kg);
  Explanation ex =
      Explain(q.triple, q.missing, params, ws->commonsense, ws->kg, top_k);
  out << FormatExplanation(ex, ws->kg);
  return ex;
}

std::vector<ComparisonRow> CmdCompareNs(const RunConfig& cfg, std::ostream& out) {
  cfg.Validate();
  const auto ws = LoadWorkspace(cfg);
  EnsureOutputDir(cfg);
  std::vector<ComparisonRow> rows;
  std::ostringstream discard;
  for (const SamplingStrategy s :
       {SamplingStrategy::kUniform, SamplingStrategy::kSelfAdversarial,
        SamplingStrategy::kCommonsenseAware}) {
    RunConfig run = cfg;
    run.sampler.strategy = s;
    run.mode = PredictionMode::kRawFactOnly;
    const TrainResult trained = TrainModel(run, *ws, discard);
    rows.push_back({s, Evaluate(ws->kg.test(), trained.best, ws->commonsense,
                                ws->kg, run.mode, run.workers)});
  }
  std::string table = "strategy\tMR\tMRR\tHits@1\tHits@3\tHits@10\n";
  for (const auto& row : rows) {
    const Metrics& m = row.metrics;
    table += fmt::format("{}\t{:.3f}\t{:.6f}\t{:.6f}\t{:.6f}\t{:.6f}\n",
                         StrategyName(row.strategy), m.mr, m.mrr, m.hits1,
                         m.hits3, m.hits10);
  }
  out << table;
  auto f = OpenOutput(cfg.output_dir / "compare_ns.tsv");
  f << table;
  return rows;
}

}  // namespace ckge::cli
