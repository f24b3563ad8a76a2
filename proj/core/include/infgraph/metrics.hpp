// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The infgraph Authors

#pragma once

#include <array>
#include <string>
#include <utility>
#include <vector>

#include "infgraph/graph.hpp"

namespace infgraph {

/// BLEU of each generated label against the reference label of the same
/// role (kAllRoles order); 0 where the generated graph lacks the role.
std::array<double, kRoleCount> per_role_bleu(const InfluenceGraph& gen, const InfluenceGraph& ref);

/// Mean per-role BLEU over the eight reference roles. `ref` must be
/// schema-valid (InvalidGraphError otherwise).
double node_bleu(const InfluenceGraph& gen, const InfluenceGraph& ref);

/// Harmonic mean of 0..100 scores; 0 when either side is 0.
double harmonic_mean(double a, double b) noexcept;

/// Mean over reference edges of the harmonic mean of the two endpoint
/// node-BLEU scores.
double rel_bleu(const InfluenceGraph& gen, const InfluenceGraph& ref);

/// 1 when both graphs are schema-valid and share a structure class, else 0.
int edge_match(const InfluenceGraph& gen, const InfluenceGraph& ref);

struct GraphScores {
  std::string id;
  double node_bleu = 0.0;
  double rel_bleu = 0.0;
  int edge_match = 0;
};

struct ScoredPair {
  std::string id;
  InfluenceGraph generated;
  InfluenceGraph reference;
};

struct GraphMetricsReport {
  double node_bleu = 0.0;
  double rel_bleu = 0.0;
  double edge_match_pct = 0.0;
  std::size_t n_graphs = 0;
  std::vector<GraphScores> per_graph;
};

GraphScores score_pair(const InfluenceGraph& gen, const InfluenceGraph& ref);

/// Per-graph scores and their arithmetic means (edge match as a
/// percentage). Throws EmptyCorpusError on an empty list.
GraphMetricsReport corpus_report(const std::vector<ScoredPair>& pairs);

}  // namespace infgraph
