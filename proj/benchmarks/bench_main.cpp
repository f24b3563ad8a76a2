// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The infgraph Authors

#include <benchmark/benchmark.h>

#include <random>
#include <string>
#include <vector>

#include "infgraph/bleu.hpp"
#include "infgraph/dot.hpp"
#include "infgraph/metrics.hpp"

using namespace infgraph;

namespace {

const std::vector<std::string> kWords = {"rain", "sun",   "soil",   "roots",    "water",    "heat", "ice",
                                         "wind", "seeds", "sugar",  "more",     "less",     "plants",
                                         "oxygen", "grow", "melt", "absorbed", "produced", "the",  "of"};

std::string label(std::mt19937_64& rng, std::size_t n) {
  std::string out;
  for (std::size_t i = 0; i < n; ++i) {
    if (i) out += ' ';
    out += kWords[rng() % kWords.size()];
  }
  return out;
}

InfluenceGraph graph(std::mt19937_64& rng) {
  std::array<std::string, kRoleCount> labels;
  for (auto& l : labels) l = label(rng, 3 + rng() % 6);
  return make_complete_graph(labels, rng() % kStructureCount);
}

void BM_Bleu(benchmark::State& state) {
  std::mt19937_64 rng(1);
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto cand = tokenize_label(label(rng, n));
  const auto ref = tokenize_label(label(rng, n));
  for (auto _ : state) benchmark::DoNotOptimize(bleu(cand, ref));
}
BENCHMARK(BM_Bleu)->Arg(4)->Arg(16)->Arg(64);

void BM_CorpusReport(benchmark::State& state) {
  std::mt19937_64 rng(2);
  std::vector<ScoredPair> pairs;
  for (int i = 0; i < state.range(0); ++i) pairs.push_back({std::to_string(i), graph(rng), graph(rng)});
  for (auto _ : state) benchmark::DoNotOptimize(corpus_report(pairs));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_CorpusReport)->Arg(100)->Arg(1000);

void BM_ParseDot(benchmark::State& state) {
  std::mt19937_64 rng(3);
  const std::string text = serialize_dot(graph(rng));
  for (auto _ : state) benchmark::DoNotOptimize(parse_dot(text));
  state.SetBytesProcessed(state.iterations() * static_cast<std::int64_t>(text.size()));
}
BENCHMARK(BM_ParseDot);

void BM_SerializeDot(benchmark::State& state) {
  std::mt19937_64 rng(4);
  const auto g = graph(rng);
  for (auto _ : state) benchmark::DoNotOptimize(serialize_dot(g));
}
BENCHMARK(BM_SerializeDot);

}  // namespace

BENCHMARK_MAIN();
