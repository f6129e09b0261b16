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

#include "ckge/checkpoint.h"

#include <array>
#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>

#include <fmt/core.h>

#include "ckge/error.h"

namespace ckge {
namespace {

template <typename T>
void PutLittleEndian(std::ostream& out, T value) {
  static_assert(sizeof(T) == 4 || sizeof(T) == 8);
  using U = std::conditional_t<sizeof(T) == 4, std::uint32_t, std::uint64_t>;
  const U bits = std::bit_cast<U>(value);
  std::array<char, sizeof(T)> bytes;
  for (std::size_t i = 0; i < sizeof(T); ++i) {
    bytes[i] = static_cast<char>((bits >> (8 * i)) & 0xFF);
  }
  out.write(bytes.data(), bytes.size());
}

template <typename T>
T GetLittleEndian(std::istream& in) {
  using U = std::conditional_t<sizeof(T) == 4, std::uint32_t, std::uint64_t>;
  std::array<unsigned char, sizeof(T)> bytes;
  in.read(reinterpret_cast<char*>(bytes.data()), bytes.size());
  if (!in) throw CheckpointError("truncated checkpoint");
  U bits = 0;
  for (std::size_t i = 0; i < sizeof(T); ++i) {
    bits |= static_cast<U>(bytes[i]) << (8 * i);
  }
  return std::bit_cast<T>(bits);
}

}  // namespace

void WriteCheckpoint(const ModelParams& params, std::ostream& out) {
  out.write(kCheckpointMagic, sizeof(kCheckpointMagic));
  PutLittleEndian(out, static_cast<std::uint32_t>(params.kind));
  PutLittleEndian(out, std::uint32_t{0});
  PutLittleEndian(out, static_cast<std::uint64_t>(params.num_entities));
  PutLittleEndian(out, static_cast<std::uint64_t>(params.num_relations));
  PutLittleEndian(out, static_cast<std::uint64_t>(params.dim));
  PutLittleEndian(out, params.gamma);
  PutLittleEndian(out, params.seed);
  for (double x : params.entity_table) PutLittleEndian(out, x);
  for (double x : params.relation_table) PutLittleEndian(out, x);
  if (!out) throw CheckpointError("failed writing checkpoint");
}

ModelParams ReadCheckpoint(std::istream& in) {
  char magic[sizeof(kCheckpointMagic)];
  in.read(magic, sizeof(magic));
  if (!in || std::memcmp(magic, kCheckpointMagic, sizeof(magic)) != 0) {
    throw CheckpointError("not a checkpoint (bad magic)");
  }
  ModelParams params;
  const auto kind = GetLittleEndian<std::uint32_t>(in);
  if (kind > static_cast<std::uint32_t>(ModelKind::kDistMult)) {
    throw CheckpointError(fmt::format("unknown model kind {}", kind));
  }
  params.kind = static_cast<ModelKind>(kind);
  GetLittleEndian<std::uint32_t>(in);
  params.num_entities = GetLittleEndian<std::uint64_t>(in);
  params.num_relations = GetLittleEndian<std::uint64_t>(in);
  params.dim = GetLittleEndian<std::uint64_t>(in);
  params.gamma = GetLittleEndian<double>(in);
  params.seed = GetLittleEndian<std::uint64_t>(in);
  if (params.dim == 0 || params.num_entities >= (std::uint64_t{1} << 32) ||
      params.num_relations >= (std::uint64_t{1} << 32) ||
      params.dim >= (std::uint64_t{1} << 20)) {
    throw CheckpointError("implausible checkpoint header");
  }
  params.entity_table.resize(params.num_entities * params.entity_width());
  params.relation_table.resize(params.num_relations * params.dim);
  for (double& x : params.entity_table) x = GetLittleEndian<double>(in);
  for (double& x : params.relation_table) x = GetLittleEndian<double>(in);
  if (in.peek() != std::char_traits<char>::eof()) {
    throw CheckpointError("trailing bytes after checkpoint tables");
  }
  return params;
}

void SaveCheckpoint(const ModelParams& params,
                    const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw CheckpointError(fmt::format("cannot write {}", path.string()));
  WriteCheckpoint(params, out);
}

ModelParams LoadCheckpoint(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CheckpointError(fmt::format("cannot open {}", path.string()));
  return ReadCheckpoint(in);
}

}  // namespace ckge
