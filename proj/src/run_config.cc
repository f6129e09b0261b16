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

#include "ckge/run_config.h"

#include <charconv>
#include <fstream>
#include <istream>

#include <fmt/core.h>

#include "ckge/error.h"

namespace ckge {
namespace {

std::string_view Trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

template <typename T>
T ParseNumber(std::string_view key, std::string_view value) {
  T out{};
  const auto* end = value.data() + value.size();
  auto [ptr, ec] = std::from_chars(value.data(), end, out);
  if (ec != std::errc() || ptr != end) {
    throw ConfigError(fmt::format("{}: cannot parse '{}'", key, value));
  }
  return out;
}

bool ParseBool(std::string_view key, std::string_view value) {
  if (value == "true" || value == "1" || value == "yes" || value == "on") {
    return true;
  }
  if (value == "false" || value == "0" || value == "no" || value == "off") {
    return false;
  }
  throw ConfigError(fmt::format("{}: expected a boolean, got '{}'", key, value));
}

std::string_view BoolText(bool b) { return b ? "true" : "false"; }

}  // namespace

TrainConfig RunConfig::EffectiveTrainConfig() const {
  TrainConfig t = train;
  t.seed = seed;
  t.workers = workers;
  t.selection_mode = mode;
  return t;
}

void RunConfig::Validate() const {
  if (dim == 0) throw ConfigError("dim must be >= 1");
  if (!(category_threshold > 0.0)) {
    throw ConfigError("category_threshold must be > 0");
  }
  sampler.Validate();
  EffectiveTrainConfig().Validate();
}

void ApplyVariant(RunConfig& cfg, std::string_view variant) {
  auto set = [&cfg](SamplingStrategy s, bool commonsense, bool categories,
                    PredictionMode mode) {
    cfg.sampler.strategy = s;
    cfg.sampler.use_commonsense = commonsense;
    cfg.sampler.use_relation_categories = categories;
    cfg.mode = mode;
  };
  using enum SamplingStrategy;
  using enum PredictionMode;
  if (variant == "base") {
    set(kSelfAdversarial, false, false, kRawFactOnly);
  } else if (variant == "cans") {
    set(kCommonsenseAware, true, true, kRawFactOnly);
  } else if (variant == "mvlp") {
    set(kSelfAdversarial, false, false, kMultiView);
  } else if (variant == "full") {
    set(kCommonsenseAware, true, true, kMultiView);
  } else if (variant == "no-crns") {
    set(kCommonsenseAware, true, false, kMultiView);
  } else if (variant == "no-csns") {
    set(kCommonsenseAware, false, true, kMultiView);
  } else if (variant == "no-mvlp") {
    set(kCommonsenseAware, true, true, kRawFactOnly);
  } else {
    throw ConfigError(fmt::format("unknown variant '{}'", variant));
  }
}

void ApplySetting(RunConfig& cfg, std::string_view key, std::string_view value) {
  if (key == "dataset") {
    cfg.dataset = std::string(value);
  } else if (key == "output_dir") {
    cfg.output_dir = std::string(value);
  } else if (key == "model") {
    auto kind = ParseModelKind(value);
    if (!kind) throw ConfigError(fmt::format("unknown model '{}'", value));
    cfg.model = *kind;
  } else if (key == "dim") {
    cfg.dim = ParseNumber<std::size_t>(key, value);
  } else if (key == "gamma") {
    cfg.train.gamma = ParseNumber<double>(key, value);
  } else if (key == "learning_rate") {
    cfg.train.learning_rate = ParseNumber<double>(key, value);
  } else if (key == "alpha") {
    cfg.sampler.alpha = ParseNumber<double>(key, value);
  } else if (key == "negatives") {
    cfg.sampler.negatives = ParseNumber<std::size_t>(key, value);
  } else if (key == "pool_size") {
    cfg.sampler.pool_size = ParseNumber<std::size_t>(key, value);
  } else if (key == "strategy") {
    auto s = ParseStrategy(value);
    if (!s) throw ConfigError(fmt::format("unknown strategy '{}'", value));
    cfg.sampler.strategy = *s;
  } else if (key == "use_commonsense") {
    cfg.sampler.use_commonsense = ParseBool(key, value);
  } else if (key == "use_relation_categories") {
    cfg.sampler.use_relation_categories = ParseBool(key, value);
  } else if (key == "energy_logits") {
    cfg.sampler.energy_logits = ParseBool(key, value);
  } else if (key == "batch_size") {
    cfg.train.batch_size = ParseNumber<std::size_t>(key, value);
  } else if (key == "max_steps") {
    cfg.train.max_steps = ParseNumber<std::size_t>(key, value);
  } else if (key == "eval_every") {
    cfg.train.eval_every = ParseNumber<std::size_t>(key, value);
  } else if (key == "valid_limit") {
    cfg.train.valid_limit = ParseNumber<std::size_t>(key, value);
  } else if (key == "log_every") {
    cfg.train.log_every = ParseNumber<std::size_t>(key, value);
  } else if (key == "adam_beta1") {
    cfg.train.beta1 = ParseNumber<double>(key, value);
  } else if (key == "adam_beta2") {
    cfg.train.beta2 = ParseNumber<double>(key, value);
  } else if (key == "adam_epsilon") {
    cfg.train.epsilon = ParseNumber<double>(key, value);
  } else if (key == "mode") {
    auto mode = ParsePredictionMode(value);
    if (!mode) throw ConfigError(fmt::format("unknown mode '{}'", value));
    cfg.mode = *mode;
  } else if (key == "category_threshold") {
    cfg.category_threshold = ParseNumber<double>(key, value);
  } else if (key == "seed") {
    cfg.seed = ParseNumber<std::uint64_t>(key, value);
  } else if (key == "workers") {
    cfg.workers = ParseNumber<std::size_t>(key, value);
  } else if (key == "variant") {
    ApplyVariant(cfg, value);
  } else {
    throw ConfigError(fmt::format("unknown config key '{}'", key));
  }
}

void ApplyOverride(RunConfig& cfg, std::string_view assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string_view::npos) {
    throw ConfigError(
        fmt::format("override '{}' is not of the form key=value", assignment));
  }
  ApplySetting(cfg, Trim(assignment.substr(0, eq)),
               Trim(assignment.substr(eq + 1)));
}

void ParseRunConfig(RunConfig& cfg, std::istream& in, std::string_view source) {
  std::string line;
  std::size_t line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    std::string_view view(line);
    if (const auto hash = view.find('#'); hash != std::string_view::npos) {
      view = view.substr(0, hash);
    }
    view = Trim(view);
    if (view.empty()) continue;
    const auto eq = view.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError(
          fmt::format("{}:{}: expected key = value", source, line_number));
    }
    try {
      ApplySetting(cfg, Trim(view.substr(0, eq)), Trim(view.substr(eq + 1)));
    } catch (const ConfigError& e) {
      throw ConfigError(fmt::format("{}:{}: {}", source, line_number, e.what()));
    }
  }
}

RunConfig LoadRunConfig(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(fmt::format("cannot open {}", path.string()));
  RunConfig cfg;
  ParseRunConfig(cfg, in, path.string());
  return cfg;
}

std::string FormatRunConfig(const RunConfig& cfg) {
  std::string out;
  auto put = [&out](std::string_view key, const auto& value) {
    out += fmt::format("{} = {}\n", key, value);
  };
  put("dataset", cfg.dataset.string());
  put("output_dir", cfg.output_dir.string());
  put("model", ModelKindName(cfg.model));
  put("dim", cfg.dim);
  put("gamma", cfg.train.gamma);
  put("learning_rate", cfg.train.learning_rate);
  put("alpha", cfg.sampler.alpha);
  put("negatives", cfg.sampler.negatives);
  put("pool_size", cfg.sampler.pool_size);
  put("strategy", StrategyName(cfg.sampler.strategy));
  put("use_commonsense", BoolText(cfg.sampler.use_commonsense));
  put("use_relation_categories", BoolText(cfg.sampler.use_relation_categories));
  put("energy_logits", BoolText(cfg.sampler.energy_logits));
  put("batch_size", cfg.train.batch_size);
  put("max_steps", cfg.train.max_steps);
  put("eval_every", cfg.train.eval_every);
  put("valid_limit", cfg.train.valid_limit);
  put("log_every", cfg.train.log_every);
  put("adam_beta1", cfg.train.beta1);
  put("adam_beta2", cfg.train.beta2);
  put("adam_epsilon", cfg.train.epsilon);
  put("mode", PredictionModeName(cfg.mode));
  put("category_threshold", cfg.category_threshold);
  put("seed", cfg.seed);
  put("workers", cfg.workers);
  return out;
}

}  // namespace ckge
