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

#ifndef CKGE_RUN_CONFIG_H_
#define CKGE_RUN_CONFIG_H_

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>

#include "ckge/link_prediction.h"
#include "ckge/model.h"
#include "ckge/relation_profile.h"
#include "ckge/sampler.h"
#include "ckge/trainer.h"

namespace ckge {

// Everything one pipeline run needs. Parsed from `key = value` lines;
// `#` starts a comment. Every key has a default.
struct RunConfig {
  std::filesystem::path dataset = "data";
  std::filesystem::path output_dir = "out";
  ModelKind model = ModelKind::kTransE;
  std::size_t dim = 200;
  SamplerConfig sampler;
  TrainConfig train;
  PredictionMode mode = PredictionMode::kMultiView;
  double category_threshold = kDefaultCategoryThreshold;
  std::uint64_t seed = 0;
  std::size_t workers = 1;

  // Train config with seed, worker count and selection mode filled in from
  // the run-level fields.
  TrainConfig EffectiveTrainConfig() const;
  void Validate() const;
};

// Named presets:
//   base     self-adversarial sampling, raw prediction
//   cans     commonsense-aware sampling, raw prediction
//   mvlp     self-adversarial sampling, multi-view prediction
//   full     commonsense-aware sampling, multi-view prediction
//   no-crns  full without relation categories
//   no-csns  full without commonsense candidate concepts
//   no-mvlp  full with raw prediction
void ApplyVariant(RunConfig& cfg, std::string_view variant);

// Sets one key; throws ConfigError for unknown keys or bad values.
void ApplySetting(RunConfig& cfg, std::string_view key, std::string_view value);

// Parses `key=value`.
void ApplyOverride(RunConfig& cfg, std::string_view assignment);

void ParseRunConfig(RunConfig& cfg, std::istream& in, std::string_view source);
RunConfig LoadRunConfig(const std::filesystem::path& path);

// Canonical `key = value` dump; parsing it back yields the same config.
std::string FormatRunConfig(const RunConfig& cfg);

}  // namespace ckge

#endif  // CKGE_RUN_CONFIG_H_
