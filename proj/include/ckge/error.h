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

#ifndef CKGE_ERROR_H_
#define CKGE_ERROR_H_

#include <stdexcept>
#include <string>

namespace ckge {

// Base error. `kind()` is a short machine-readable category
// ("dataset", "config", "checkpoint", "training", "query").
class Error : public std::runtime_error {
 public:
  Error(std::string kind, const std::string& message)
      : std::runtime_error(message), kind_(std::move(kind)) {}

  const std::string& kind() const { return kind_; }

 private:
  std::string kind_;
};

class DatasetError : public Error {
 public:
  explicit DatasetError(const std::string& message) : Error("dataset", message) {}
};

class ConfigError : public Error {
 public:
  explicit ConfigError(const std::string& message) : Error("config", message) {}
};

class CheckpointError : public Error {
 public:
  explicit CheckpointError(const std::string& message)
      : Error("checkpoint", message) {}
};

class TrainingError : public Error {
 public:
  explicit TrainingError(const std::string& message)
      : Error("training", message) {}
};

class QueryError : public Error {
 public:
  explicit QueryError(const std::string& message) : Error("query", message) {}
};

}  // namespace ckge

#endif  // CKGE_ERROR_H_
