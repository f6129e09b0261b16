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

#ifndef CKGE_DATASET_H_
#define CKGE_DATASET_H_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace ckge {

class KnowledgeGraph;

// One `head<TAB>relation<TAB>tail` line. `line` is 1-based and kept for
// error messages.
struct RawTriple {
  std::string head;
  std::string relation;
  std::string tail;
  std::size_t line = 0;
};

// One `entity<TAB>concept` line.
struct RawConcept {
  std::string entity;
  std::string concept_label;
  std::size_t line = 0;
};

struct FileStats {
  std::size_t records = 0;
  std::uint32_t crc32 = 0;
};

// Locations of the four dataset files plus what was observed when loading
// them.
struct DatasetManifest {
  std::filesystem::path train;
  std::filesystem::path valid;
  std::filesystem::path test;
  std::filesystem::path entity2concept;

  FileStats train_stats;
  FileStats valid_stats;
  FileStats test_stats;
  FileStats concept_stats;
};

struct RawDataset {
  std::vector<RawTriple> train;
  std::vector<RawTriple> valid;
  std::vector<RawTriple> test;
  std::vector<RawConcept> concepts;
};

// Resolves a dataset location. `path` may be a `manifest.txt` file or a
// directory; a directory uses its `manifest.txt` when present and the
// standard file names otherwise.
DatasetManifest ResolveManifest(const std::filesystem::path& path);

// Reads `key = path` lines (keys: train, valid, test, entity2concept).
// Relative paths resolve against the manifest's directory.
DatasetManifest ReadManifest(const std::filesystem::path& manifest_file);
void WriteManifest(const DatasetManifest& manifest,
                   const std::filesystem::path& manifest_file);

// Parsers accept a UTF-8 BOM, CRLF line endings and blank lines. A line
// with the wrong number of tab-separated fields throws DatasetError naming
// `source` and the line number.
std::vector<RawTriple> ParseTriples(std::istream& in, std::string_view source);
std::vector<RawConcept> ParseConcepts(std::istream& in,
                                      std::string_view source);

// Loads all four files and fills the manifest's record counts and CRC32s.
RawDataset LoadDataset(DatasetManifest& manifest);

struct ValidationReport {
  std::size_t sentinel_entities = 0;
  std::size_t test_relations_unseen_in_train = 0;
  std::size_t duplicate_train_triples = 0;
  std::size_t duplicate_valid_triples = 0;
  std::size_t duplicate_test_triples = 0;
  std::size_t duplicate_concept_lines = 0;
  std::size_t unused_concept_lines = 0;

  bool clean() const;
};

ValidationReport Validate(const RawDataset& raw, const KnowledgeGraph& kg);

// Plain `key<TAB>value` rendering used for validate.txt.
std::string FormatValidationReport(const ValidationReport& report);

}  // namespace ckge

#endif  // CKGE_DATASET_H_
