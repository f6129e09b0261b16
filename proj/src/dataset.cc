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

#include "ckge/dataset.h"

#include <zlib.h>

#include <fstream>
#include <set>
#include <sstream>
#include <tuple>
#include <unordered_set>

#include <fmt/core.h>

#include "ckge/error.h"
#include "ckge/knowledge_graph.h"

namespace ckge {
namespace {

std::string_view Trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> SplitTabs(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const auto pos = line.find('\t', start);
    if (pos == std::string_view::npos) {
      fields.push_back(line.substr(start));
      break;
    }
    fields.push_back(line.substr(start, pos - start));
    start = pos + 1;
  }
  return fields;
}

// Calls `fn(fields, line_number)` for every non-blank line.
template <typename Fn>
void ForEachRecord(std::istream& in, std::string_view source,
                   std::size_t expected_fields, Fn&& fn) {
  std::string line;
  std::size_t line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    std::string_view view(line);
    if (line_number == 1 && view.starts_with("\xEF\xBB\xBF")) {
      view.remove_prefix(3);
    }
    if (!view.empty() && view.back() == '\r') view.remove_suffix(1);
    if (Trim(view).empty()) continue;
    auto fields = SplitTabs(view);
    if (fields.size() != expected_fields) {
      throw DatasetError(fmt::format(
          "{}:{}: expected {} tab-separated fields, found {}", source,
          line_number, expected_fields, fields.size()));
    }
    for (auto& f : fields) {
      f = Trim(f);
      if (f.empty()) {
        throw DatasetError(
            fmt::format("{}:{}: empty field", source, line_number));
      }
    }
    fn(fields, line_number);
  }
}

std::string ReadFileBytes(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw DatasetError(fmt::format("cannot open {}", path.string()));
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

std::uint32_t Crc32(std::string_view bytes) {
  uLong crc = crc32(0L, Z_NULL, 0);
  crc = crc32(crc, reinterpret_cast<const Bytef*>(bytes.data()),
              static_cast<uInt>(bytes.size()));
  return static_cast<std::uint32_t>(crc);
}

std::vector<RawTriple> LoadTriples(const std::filesystem::path& path,
                                   FileStats& stats) {
  const std::string bytes = ReadFileBytes(path);
  std::istringstream in(bytes);
  auto triples = ParseTriples(in, path.string());
  stats.records = triples.size();
  stats.crc32 = Crc32(bytes);
  return triples;
}

std::size_t CountDuplicates(const std::vector<RawTriple>& triples) {
  std::set<std::tuple<std::string_view, std::string_view, std::string_view>>
      seen;
  std::size_t duplicates = 0;
  for (const auto& t : triples) {
    if (!seen.emplace(t.head, t.relation, t.tail).second) ++duplicates;
  }
  return duplicates;
}

}  // namespace

std::vector<RawTriple> ParseTriples(std::istream& in, std::string_view source) {
  std::vector<RawTriple> triples;
  ForEachRecord(in, source, 3, [&](const auto& f, std::size_t line) {
    triples.push_back(RawTriple{std::string(f[0]), std::string(f[1]),
                                std::string(f[2]), line});
  });
  return triples;
}

std::vector<RawConcept> ParseConcepts(std::istream& in,
                                      std::string_view source) {
  std::vector<RawConcept> concepts;
  ForEachRecord(in, source, 2, [&](const auto& f, std::size_t line) {
    concepts.push_back(RawConcept{std::string(f[0]), std::string(f[1]), line});
  });
  return concepts;
}

DatasetManifest ReadManifest(const std::filesystem::path& manifest_file) {
  std::ifstream in(manifest_file);
  if (!in) {
    throw DatasetError(fmt::format("cannot open {}", manifest_file.string()));
  }
  const auto base = manifest_file.parent_path();
  DatasetManifest manifest;
  std::string line;
  std::size_t line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    std::string_view view = Trim(line);
    if (view.empty() || view.front() == '#') continue;
    const auto eq = view.find('=');
    if (eq == std::string_view::npos) {
      throw DatasetError(fmt::format("{}:{}: expected key = path",
                                     manifest_file.string(), line_number));
    }
    const auto key = Trim(view.substr(0, eq));
    std::filesystem::path value(std::string(Trim(view.substr(eq + 1))));
    if (value.is_relative()) value = base / value;
    if (key == "train") {
      manifest.train = value;
    } else if (key == "valid") {
      manifest.valid = value;
    } else if (key == "test") {
      manifest.test = value;
    } else if (key == "entity2concept") {
      manifest.entity2concept = value;
    } else {
      throw DatasetError(fmt::format("{}:{}: unknown key '{}'",
                                     manifest_file.string(), line_number, key));
    }
  }
  if (manifest.train.empty() || manifest.valid.empty() ||
      manifest.test.empty() || manifest.entity2concept.empty()) {
    throw DatasetError(fmt::format(
        "{}: manifest must list train, valid, test and entity2concept",
        manifest_file.string()));
  }
  return manifest;
}

void WriteManifest(const DatasetManifest& manifest,
                   const std::filesystem::path& manifest_file) {
  std::ofstream out(manifest_file);
  if (!out) {
    throw DatasetError(fmt::format("cannot write {}", manifest_file.string()));
  }
  out << "train = " << manifest.train.string() << '\n'
      << "valid = " << manifest.valid.string() << '\n'
      << "test = " << manifest.test.string() << '\n'
      << "entity2concept = " << manifest.entity2concept.string() << '\n';
}

DatasetManifest ResolveManifest(const std::filesystem::path& path) {
  if (std::filesystem::is_directory(path)) {
    const auto manifest_file = path / "manifest.txt";
    if (std::filesystem::exists(manifest_file)) {
      return ReadManifest(manifest_file);
    }
    DatasetManifest manifest;
    manifest.train = path / "train.txt";
    manifest.valid = path / "valid.txt";
    manifest.test = path / "test.txt";
    manifest.entity2concept = path / "entity2concept.txt";
    return manifest;
  }
  if (std::filesystem::exists(path)) return ReadManifest(path);
  throw DatasetError(fmt::format("dataset path {} does not exist", path.string()));
}

RawDataset LoadDataset(DatasetManifest& manifest) {
  RawDataset raw;
  raw.train = LoadTriples(manifest.train, manifest.train_stats);
  raw.valid = LoadTriples(manifest.valid, manifest.valid_stats);
  raw.test = LoadTriples(manifest.test, manifest.test_stats);

  const std::string bytes = ReadFileBytes(manifest.entity2concept);
  std::istringstream in(bytes);
  raw.concepts = ParseConcepts(in, manifest.entity2concept.string());
  manifest.concept_stats.records = raw.concepts.size();
  manifest.concept_stats.crc32 = Crc32(bytes);
  return raw;
}

bool ValidationReport::clean() const {
  return sentinel_entities == 0 && test_relations_unseen_in_train == 0 &&
         duplicate_train_triples == 0 && duplicate_valid_triples == 0 &&
         duplicate_test_triples == 0 && duplicate_concept_lines == 0 &&
         unused_concept_lines == 0;
}

ValidationReport Validate(const RawDataset& raw, const KnowledgeGraph& kg) {
  ValidationReport report;
  report.sentinel_entities = kg.build_stats().sentinel_entities;
  report.duplicate_concept_lines = kg.build_stats().duplicate_concept_lines;
  report.unused_concept_lines = kg.build_stats().unused_concept_lines;

  std::unordered_set<std::string_view> train_relations;
  for (const auto& t : raw.train) train_relations.insert(t.relation);
  std::unordered_set<std::string_view> unseen;
  for (const auto& t : raw.test) {
    if (!train_relations.contains(t.relation)) unseen.insert(t.relation);
  }
  report.test_relations_unseen_in_train = unseen.size();

  report.duplicate_train_triples = CountDuplicates(raw.train);
  report.duplicate_valid_triples = CountDuplicates(raw.valid);
  report.duplicate_test_triples = CountDuplicates(raw.test);
  return report;
}

std::string FormatValidationReport(const ValidationReport& report) {
  return fmt::format(
      "sentinel_entities\t{}\n"
      "test_relations_unseen_in_train\t{}\n"
      "duplicate_train_triples\t{}\n"
      "duplicate_valid_triples\t{}\n"
      "duplicate_test_triples\t{}\n"
      "duplicate_concept_lines\t{}\n"
      "unused_concept_lines\t{}\n",
      report.sentinel_entities, report.test_relations_unseen_in_train,
      report.duplicate_train_triples, report.duplicate_valid_triples,
      report.duplicate_test_triples, report.duplicate_concept_lines,
      report.unused_concept_lines);
}

}  // namespace ckge
