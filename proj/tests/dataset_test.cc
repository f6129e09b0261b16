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

#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

#include "ckge/error.h"
#include "ckge/knowledge_graph.h"
#include "test_util.h"

namespace ckge {
namespace {

TEST(ParseTriplesTest, ToleratesBomCrlfAndBlankLines) {
  std::istringstream in("\xEF\xBB\xBF" "a\tr\tb\r\n\n  \r\nc\tr\td\r\n");
  const auto triples = ParseTriples(in, "mem");
  ASSERT_EQ(triples.size(), 2u);
  EXPECT_EQ(triples[0].head, "a");
  EXPECT_EQ(triples[0].tail, "b");
  EXPECT_EQ(triples[1].head, "c");
  EXPECT_EQ(triples[1].line, 4u);
}

TEST(ParseTriplesTest, EmptyInputYieldsNoRecords) {
  std::istringstream in("");
  EXPECT_TRUE(ParseTriples(in, "mem").empty());
}

TEST(ParseTriplesTest, WrongFieldCountReportsLine) {
  std::istringstream in("a\tr\tb\nc\td\n");
  try {
    ParseTriples(in, "train.txt");
    FAIL() << "expected DatasetError";
  } catch (const DatasetError& e) {
    EXPECT_EQ(std::string(e.what()),
              "train.txt:2: expected 3 tab-separated fields, found 2");
    EXPECT_EQ(e.kind(), "dataset");
  }
}

TEST(ParseTriplesTest, EmptyFieldIsAnError) {
  std::istringstream in("a\t\tb\n");
  EXPECT_THROW(ParseTriples(in, "mem"), DatasetError);
}

TEST(ParseConceptsTest, TwoFields) {
  std::istringstream in("rockets\tsportsteam\nnba\tsportsleague\n");
  const auto concepts = ParseConcepts(in, "mem");
  ASSERT_EQ(concepts.size(), 2u);
  EXPECT_EQ(concepts[1].entity, "nba");
  EXPECT_EQ(concepts[1].concept_label, "sportsleague");
  std::istringstream bad("rockets\tsportsteam\textra\n");
  EXPECT_THROW(ParseConcepts(bad, "mem"), DatasetError);
}

TEST(ManifestTest, ResolvesStandardNamesAndManifestFile) {
  const auto dir = testing::ScratchDir("manifest");
  RawDataset raw;
  raw.train = {{"a", "r", "b", 0}};
  raw.valid = {{"b", "r", "a", 0}};
  raw.test = {{"a", "r", "a", 0}};
  raw.concepts = {{"a", "x", 0}};
  testing::WriteRawDataset(raw, dir / "data");

  DatasetManifest by_dir = ResolveManifest(dir / "data");
  EXPECT_EQ(by_dir.train, dir / "data" / "train.txt");

  DatasetManifest m = by_dir;
  m.train = "train.txt";
  m.valid = "valid.txt";
  m.test = "test.txt";
  m.entity2concept = "entity2concept.txt";
  WriteManifest(m, dir / "data" / "manifest.txt");
  DatasetManifest read = ResolveManifest(dir / "data" / "manifest.txt");
  EXPECT_EQ(read.train, dir / "data" / "train.txt");
  EXPECT_EQ(read.entity2concept, dir / "data" / "entity2concept.txt");

  RawDataset loaded = LoadDataset(read);
  EXPECT_EQ(loaded.train.size(), 1u);
  EXPECT_EQ(read.train_stats.records, 1u);
  EXPECT_NE(read.train_stats.crc32, 0u);
}

TEST(ManifestTest, MissingPathIsDatasetError) {
  EXPECT_THROW(ResolveManifest("/nonexistent/ckge/dataset"), DatasetError);
}

TEST(ManifestTest, UnknownKeyIsDatasetError) {
  const auto dir = testing::ScratchDir("manifest_bad");
  std::ofstream(dir / "manifest.txt") << "train = a\nbogus = b\n";
  EXPECT_THROW(ReadManifest(dir / "manifest.txt"), DatasetError);
}

TEST(ValidateTest, ToyFixtureReportsOneSentinel) {
  const RawDataset raw = testing::LoadDir(testing::ToyDir());
  const KnowledgeGraph kg = KnowledgeGraph::Build(raw);
  const ValidationReport report = Validate(raw, kg);
  EXPECT_EQ(report.sentinel_entities, 1u);
  EXPECT_EQ(report.test_relations_unseen_in_train, 0u);
  EXPECT_EQ(report.duplicate_train_triples, 0u);
  EXPECT_FALSE(report.clean());
}

TEST(ValidateTest, CountsDuplicatesAndUnseenRelations) {
  RawDataset raw;
  raw.train = {{"a", "r", "b", 1}, {"a", "r", "b", 2}, {"b", "r", "c", 3}};
  raw.valid = {};
  raw.test = {{"a", "s", "c", 1}, {"a", "s", "c", 2}};
  raw.concepts = {{"a", "x", 1}, {"a", "x", 2}, {"b", "y", 3},
                  {"c", "y", 4}, {"zzz", "y", 5}};
  const KnowledgeGraph kg = KnowledgeGraph::Build(raw);
  const ValidationReport report = Validate(raw, kg);
  EXPECT_EQ(report.duplicate_train_triples, 1u);
  EXPECT_EQ(report.duplicate_test_triples, 1u);
  EXPECT_EQ(report.test_relations_unseen_in_train, 1u);
  EXPECT_EQ(report.duplicate_concept_lines, 1u);
  EXPECT_EQ(report.unused_concept_lines, 1u);
  EXPECT_EQ(report.sentinel_entities, 0u);
  EXPECT_EQ(FormatValidationReport(report).substr(0, 20),
            "sentinel_entities\t0\n");
}

}  // namespace
}  // namespace ckge
