// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The infgraph Authors

#include "infgraph/metrics.hpp"

#include "infgraph/bleu.hpp"
#include "infgraph/errors.hpp"

namespace infgraph {
namespace {

void require_complete(const InfluenceGraph& ref) {
  const auto report = validate_schema(ref);
  if (!report.valid()) {
    throw InvalidGraphError("reference graph is incomplete: " +
                            std::string(to_string(report.violations.front().kind)) + " " +
                            report.violations.front().detail);
  }
}

double node_mean(const std::array<double, kRoleCount>& scores) {
  double sum = 0.0;
  for (double s : scores) sum += s;
  return sum / static_cast<double>(kRoleCount);
}

double rel_mean(const std::array<double, kRoleCount>& scores, const InfluenceGraph& ref) {
  const auto& edges = ref.edges();
  double sum = 0.0;
  for (const auto& e : edges) {
    sum += harmonic_mean(scores[index_of(e.src)], scores[index_of(e.dst)]);
  }
  return sum / static_cast<double>(edges.size());
}

}  // namespace

std::array<double, kRoleCount> per_role_bleu(const InfluenceGraph& gen, const InfluenceGraph& ref) {
  std::array<double, kRoleCount> scores{};
  for (NodeRole role : kAllRoles) {
    const auto& g = gen.label(role);
    const auto& r = ref.label(role);
    if (!g || !r) continue;
    scores[index_of(role)] = bleu(tokenize_label(*g), tokenize_label(*r));
  }
  return scores;
}

double node_bleu(const InfluenceGraph& gen, const InfluenceGraph& ref) {
  require_complete(ref);
  return node_mean(per_role_bleu(gen, ref));
}

double harmonic_mean(double a, double b) noexcept {
  if (a <= 0.0 || b <= 0.0) return 0.0;
  return 2.0 * a * b / (a + b);
}

double rel_bleu(const InfluenceGraph& gen, const InfluenceGraph& ref) {
  require_complete(ref);
  return rel_mean(per_role_bleu(gen, ref), ref);
}

int edge_match(const InfluenceGraph& gen, const InfluenceGraph& ref) {
  if (!validate_schema(gen).valid() || !validate_schema(ref).valid()) return 0;
  return structure_class(gen) == structure_class(ref) ? 1 : 0;
}

GraphScores score_pair(const InfluenceGraph& gen, const InfluenceGraph& ref) {
  require_complete(ref);
  const auto scores = per_role_bleu(gen, ref);
  GraphScores out;
  out.node_bleu = node_mean(scores);
  out.rel_bleu = rel_mean(scores, ref);
  out.edge_match = edge_match(gen, ref);
  return out;
}

GraphMetricsReport corpus_report(const std::vector<ScoredPair>& pairs) {
  if (pairs.empty()) throw EmptyCorpusError("corpus_report needs at least one graph pair");
  GraphMetricsReport report;
  report.n_graphs = pairs.size();
  report.per_graph.reserve(pairs.size());
  double node = 0.0;
  double rel = 0.0;
  double edge = 0.0;
  for (const auto& p : pairs) {
    GraphScores s;
    try {
      s = score_pair(p.generated, p.reference);
    } catch (const Error& e) {
      throw InvalidGraphError("pair " + p.id + ": " + e.what());
    }
    s.id = p.id;
    node += s.node_bleu;
    rel += s.rel_bleu;
    edge += s.edge_match;
    report.per_graph.push_back(std::move(s));
  }
  const double n = static_cast<double>(pairs.size());
  report.node_bleu = node / n;
  report.rel_bleu = rel / n;
  report.edge_match_pct = 100.0 * edge / n;
  return report;
}

}  // namespace infgraph
