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

// Command-line driver: prepare | train | eval | predict | compare-ns.
//
// Failures print a single line `error: <kind>: <message>` to stderr and
// exit with status 1 (2 for usage errors).

#include <cstdio>
#include <exception>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/core.h>

#include "ckge/error.h"
#include "ckge/run_config.h"
#include "commands.h"

namespace {

void Fail(std::string_view kind, std::string_view message) {
  std::string flat(message);
  for (char& c : flat) {
    if (c == '\n' || c == '\r') c = ' ';
  }
  fmt::print(stderr, "error: {}: {}\n", kind, flat);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Commonsense-aware knowledge graph embedding toolkit"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string config_path;
  std::vector<std::string> overrides;
  std::optional<std::size_t> workers;
  std::string checkpoint;
  std::string mode;
  std::string split = "test";
  std::string query;
  std::string dataset;
  std::size_t top_k = 10;

  app.add_option("--config", config_path, "Run config file (key = value)");
  app.add_option("--set", overrides, "Override a config key: key=value")
      ->expected(1)
      ->multi_option_policy(CLI::MultiOptionPolicy::TakeAll);
  app.add_option("--workers", workers, "Maximum worker threads")
      ->check(CLI::PositiveNumber);

  auto* prepare = app.add_subcommand(
      "prepare", "Write commonsense, relation profiles and validation report");
  prepare->add_option("dataset", dataset, "Dataset directory or manifest");

  auto* train = app.add_subcommand("train", "Train and write a checkpoint");

  auto* eval = app.add_subcommand("eval", "Evaluate a checkpoint");
  eval->add_option("--checkpoint", checkpoint, "Checkpoint file");
  eval->add_option("--mode", mode, "Prediction mode: raw or mvlp")
      ->check(CLI::IsMember({"raw", "mvlp"}));
  eval->add_option("--split", split, "Split to rank: valid or test")
      ->check(CLI::IsMember({"valid", "test"}));

  auto* predict =
      app.add_subcommand("predict", "Explain the top answers to one query");
  predict->add_option("query", query, "'head relation ?' or '? relation tail'")
      ->required();
  predict->add_option("--checkpoint", checkpoint, "Checkpoint file");
  predict->add_option("--top", top_k, "Number of answers")
      ->check(CLI::PositiveNumber);

  auto* compare = app.add_subcommand(
      "compare-ns", "Train and compare the three sampling strategies");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    Fail("usage", e.what());
    return 2;
  }

  try {
    ckge::RunConfig cfg;
    if (!config_path.empty()) cfg = ckge::LoadRunConfig(config_path);
    for (const auto& o : overrides) ckge::ApplyOverride(cfg, o);
    if (workers) cfg.workers = *workers;
    if (!dataset.empty()) cfg.dataset = dataset;
    if (!mode.empty()) ckge::ApplySetting(cfg, "mode", mode);
    const std::filesystem::path ckpt =
        checkpoint.empty() ? cfg.output_dir / ckge::cli::kCheckpointFile
                           : std::filesystem::path(checkpoint);

    if (*prepare) {
      ckge::cli::CmdPrepare(cfg, std::cout);
    } else if (*train) {
      ckge::cli::CmdTrain(cfg, std::cout);
    } else if (*eval) {
      ckge::cli::CmdEval(cfg, ckpt,
                         split == "valid" ? ckge::cli::EvalSplit::kValid
                                          : ckge::cli::EvalSplit::kTest,
                         std::cout);
    } else if (*predict) {
      ckge::cli::CmdPredict(cfg, ckpt, query, top_k, std::cout);
    } else if (*compare) {
      ckge::cli::CmdCompareNs(cfg, std::cout);
    }
  } catch (const ckge::Error& e) {
    Fail(e.kind(), e.what());
    return 1;
  } catch (const std::exception& e) {
    Fail("internal", e.what());
    return 1;
  }
  return 0;
}
