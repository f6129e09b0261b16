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

#include "ckge/link_prediction.h"

#include <algorithm>
#include <numeric>
#include <thread>

#include <fmt/core.h>

#include "ckge/error.h"

namespace ckge {

std::string_view PredictionModeName(PredictionMode mode) {
  return mode == PredictionMode::kMultiView ? "mvlp" : "raw";
}

std::optional<PredictionMode> ParsePredictionMode(std::string_view name) {
  if (name == "mvlp" || name == "multiview") return PredictionMode::kMultiView;
  if (name == "raw") return PredictionMode::kRawFactOnly;
  return std::nullopt;
}

CandidateSplit CandidateEntities(const Triple& query, Side missing,
                                 const CommonsenseStore& cs,
                                 const KnowledgeGraph& kg) {
  CandidateSplit split;
  const EntityId known =
      missing == Side::kTail ? query.head : query.tail;
  for (const ConceptId c : kg.ConceptsOf(known)) {
    const auto admitted = missing == Side::kTail
                              ? cs.TailConceptsFor(c, query.relation)
                              : cs.HeadConceptsFor(query.relation, c);
    split.concepts.insert(split.concepts.end(), admitted.begin(),
                          admitted.end());
  }
  std::sort(split.concepts.begin(), split.concepts.end());
  split.concepts.erase(
      std::unique(split.concepts.begin(), split.concepts.end()),
      split.concepts.end());

  const std::size_t n = kg.num_entities();
  if (split.concepts.empty()) {
    split.fallback = true;
    split.admitted.assign(n, 1);
    split.admitted_count = n;
    return split;
  }
  split.admitted.assign(n, 0);
  for (const ConceptId c : split.concepts) {
    for (const EntityId e : kg.EntitiesOf(c)) {
      if (!split.admitted[e.index()]) {
        split.admitted[e.index()] = 1;
        ++split.admitted_count;
      }
    }
  }
  return split;
}

RankResult RankQuery(const Triple& triple, Side missing,
                     const ModelParams& params, const CommonsenseStore& cs,
                     const KnowledgeGraph& kg, PredictionMode mode) {
  const std::size_t n = kg.num_entities();
  const EntityId gold = EntityAt(triple, missing);
  if (!gold.valid() || gold.index() >= n) {
    throw QueryError(fmt::format("gold entity {} out of range", gold.value()));
  }
  std::vector<double> energies(n);
  ScoreAllCandidates(params, triple, missing, energies);

  std::vector<std::uint8_t> is_true(n, 0);
  for (const EntityId e : kg.TrueEntities(triple, missing)) {
    is_true[e.index()] = 1;
  }

  RankResult result;
  result.triple = triple;
  result.missing = missing;

  const double gold_energy = energies[gold.index()];
  const auto g = gold.index();
  auto better = [&](std::size_t e) {
    return energies[e] < gold_energy || (energies[e] == gold_energy && e < g);
  };

  if (mode == PredictionMode::kRawFactOnly) {
    std::size_t raw = 0;
    std::size_t filtered = 0;
    for (std::size_t e = 0; e < n; ++e) {
      if (e == g || !better(e)) continue;
      ++raw;
      filtered += !is_true[e];
    }
    result.gold_rank = filtered + 1;
    result.raw_rank = raw + 1;
    result.candidate_set_size = n;
    return result;
  }

  const CandidateSplit split = CandidateEntities(triple, missing, cs, kg);
  result.used_fallback = split.fallback;
  result.candidate_set_size = split.admitted_count;
  const bool gold_admitted = split.admitted[g] != 0;
  std::size_t raw = 0;
  std::size_t filtered = 0;
  for (std::size_t e = 0; e < n; ++e) {
    if (e == g) continue;
    // Every admitted entity outranks a gold entity outside the split.
    const bool ahead = split.admitted[e] ? (!gold_admitted || better(e))
                                         : (!gold_admitted && better(e));
    if (!ahead) continue;
    ++raw;
    filtered += !is_true[e];
  }
  result.gold_rank = filtered + 1;
  result.raw_rank = raw + 1;
  return result;
}

Metrics MetricsFromRanks(std::span<const std::size_t> ranks) {
  Metrics m;
  m.count = ranks.size();
  if (ranks.empty()) return m;
  for (const std::size_t rank : ranks) {
    const double r = static_cast<double>(rank);
    m.mr += r;
    m.mrr += 1.0 / r;
    m.hits1 += rank <= 1;
    m.hits3 += rank <= 3;
    m.hits10 += rank <= 10;
  }
  const double count = static_cast<double>(ranks.size());
  m.mr /= count;
  m.mrr /= count;
  m.hits1 /= count;
  m.hits3 /= count;
  m.hits10 /= count;
  return m;
}

std::vector<RankResult> RankAll(std::span<const Triple> triples,
                                const ModelParams& params,
                                const CommonsenseStore& cs,
                                const KnowledgeGraph& kg, PredictionMode mode,
                                std::size_t workers) {
  // Query 2i is the head query of triple i, 2i + 1 the tail query.
  std::vector<RankResult> results(2 * triples.size());
  auto run = [&](std::size_t begin, std::size_t end) {
    for (std::size_t q = begin; q < end; ++q) {
      const Side side = q % 2 == 0 ? Side::kHead : Side::kTail;
      results[q] = RankQuery(triples[q / 2], side, params, cs, kg, mode);
    }
  };
  workers = std::max<std::size_t>(1, std::min(workers, results.size()));
  if (workers == 1) {
    run(0, results.size());
    return results;
  }
  std::vector<std::jthread> threads;
  const std::size_t chunk = (results.size() + workers - 1) / workers;
  for (std::size_t w = 0; w < workers; ++w) {
    const std::size_t begin = w * chunk;
    const std::size_t end = std::min(results.size(), begin + chunk);
    if (begin >= end) break;
    threads.emplace_back(run, begin, end);
  }
  threads.clear();
  return results;
}

Metrics Evaluate(std::span<const Triple> triples, const ModelParams& params,
                 const CommonsenseStore& cs, const KnowledgeGraph& kg,
                 PredictionMode mode, std::size_t workers) {
  const auto results = RankAll(triples, params, cs, kg, mode, workers);
  std::vector<std::size_t> ranks;
  ranks.reserve(results.size());
  for (const auto& r : results) ranks.push_back(r.gold_rank);
  return MetricsFromRanks(ranks);
}

Explanation Explain(const Triple& query, Side missing,
                    const ModelParams& params, const CommonsenseStore& cs,
                    const KnowledgeGraph& kg, std::size_t k) {
  const std::size_t n = kg.num_entities();
  Explanation ex;
  ex.query = query;
  ex.missing = missing;

  // Any valid id works for the missing slot; its row is never read.
  Triple probe = WithEntity(query, missing, EntityId(0));
  std::vector<double> energies(n);
  ScoreAllCandidates(params, probe, missing, energies);
  const CandidateSplit split = CandidateEntities(probe, missing, cs, kg);
  ex.fallback = split.fallback;
  ex.candidate_concepts = split.concepts;

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  auto precedes = [&](std::size_t a, std::size_t b) {
    if (split.admitted[a] != split.admitted[b]) return split.admitted[a] > 0;
    if (energies[a] != energies[b]) return energies[a] < energies[b];
    return a < b;
  };
  const std::size_t keep = std::min(k, n);
  std::partial_sort(order.begin(), order.begin() + keep, order.end(), precedes);

  const EntityId known = missing == Side::kTail ? query.head : query.tail;
  for (std::size_t i = 0; i < keep; ++i) {
    const EntityId e(static_cast<std::int32_t>(order[i]));
    ExplainedEntity item;
    item.entity = e;
    item.energy = energies[e.index()];
    item.admitted = split.admitted[e.index()] != 0 && !split.fallback;
    item.known = kg.IsKnown(WithEntity(probe, missing, e));
    const auto concepts = kg.ConceptsOf(e);
    item.concepts.assign(concepts.begin(), concepts.end());
    for (const ConceptId kc : kg.ConceptsOf(known)) {
      for (const ConceptId ec : concepts) {
        const ConceptTriple ct = missing == Side::kTail
                                     ? ConceptTriple{kc, query.relation, ec}
                                     : ConceptTriple{ec, query.relation, kc};
        if (cs.Contains(ct)) item.commonsense.push_back(ct);
      }
    }
    ex.top.push_back(std::move(item));
  }
  return ex;
}

std::string FormatExplanation(const Explanation& ex, const KnowledgeGraph& kg) {
  const auto& ent = kg.entities();
  const auto& con = kg.concepts();
  const auto& rel = kg.relations().label(ex.query.relation);
  std::string out;
  if (ex.missing == Side::kTail) {
    out += fmt::format("query\t{}\t{}\t?\n", ent.label(ex.query.head), rel);
  } else {
    out += fmt::format("query\t?\t{}\t{}\n", rel, ent.label(ex.query.tail));
  }
  if (ex.fallback) {
    out += "commonsense\tno commonsense constraint\n";
  } else {
    out += "candidate_concepts";
    for (const ConceptId c : ex.candidate_concepts) {
      out += '\t';
      out += con.label(c);
    }
    out += '\n';
  }
  for (std::size_t i = 0; i < ex.top.size(); ++i) {
    const auto& item = ex.top[i];
    out += fmt::format("rank\t{}\t{}\tenergy={:.6f}\t{}{}\n", i + 1,
                       ent.label(item.entity), item.energy,
                       item.admitted ? "admitted" : "outside",
                       item.known ? "\tknown" : "");
    out += "  concepts";
    for (const ConceptId c : item.concepts) {
      out += '\t';
      out += con.label(c);
    }
    out += '\n';
    if (item.commonsense.empty()) out += "  commonsense\tnone\n";
    for (const auto& ct : item.commonsense) {
      out += fmt::format("  commonsense\t({}, {}, {})\n", con.label(ct.head),
                         kg.relations().label(ct.relation),
                         con.label(ct.tail));
    }
  }
  return out;
}

}  // namespace ckge
