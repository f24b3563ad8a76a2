// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The infgraph Authors

#include "infgraph/graph.hpp"

#include <algorithm>
#include <set>

#include "infgraph/errors.hpp"
#include "infgraph/text.hpp"

namespace infgraph {

void check_label(std::string_view label) {
  if (text::trim(label).empty()) throw InvalidLabelError("node label is empty");
  if (label.find_first_of("\"\n\r") != std::string_view::npos) {
    throw InvalidLabelError("node label contains a double quote or line break: " +
                            std::string(label));
  }
}

InfluenceNode::InfluenceNode(NodeRole role, std::string label)
    : role_(role), label_(std::move(label)) {
  check_label(label_);
}

InfluenceGraph& InfluenceGraph::add_node(NodeRole role, std::string label) {
  check_label(label);
  auto& slot = labels_[index_of(role)];
  if (slot && *slot != label) {
    throw ConflictingLabelError("role " + std::string(to_tag(role)) + " has labels '" + *slot +
                                "' and '" + label + "'");
  }
  slot = std::move(label);
  return *this;
}

InfluenceGraph& InfluenceGraph::set_label(NodeRole role, std::string label) {
  check_label(label);
  labels_[index_of(role)] = std::move(label);
  return *this;
}

InfluenceGraph& InfluenceGraph::add_edge(NodeRole src, NodeRole dst, Polarity polarity) {
  edges_.push_back({src, dst, polarity});
  return *this;
}

std::vector<InfluenceNode> InfluenceGraph::nodes() const {
  std::vector<InfluenceNode> out;
  for (NodeRole role : kAllRoles) {
    if (const auto& l = labels_[index_of(role)]) out.emplace_back(role, *l);
  }
  return out;
}

std::size_t InfluenceGraph::node_count() const noexcept {
  return static_cast<std::size_t>(
      std::count_if(labels_.begin(), labels_.end(), [](const auto& l) { return l.has_value(); }));
}

std::optional<Polarity> InfluenceGraph::polarity(NodeRole src, NodeRole dst) const noexcept {
  for (const auto& e : edges_) {
    if (e.src == src && e.dst == dst) return e.polarity;
  }
  return std::nullopt;
}

bool operator==(const InfluenceGraph& a, const InfluenceGraph& b) {
  if (a.labels_ != b.labels_) return false;
  auto ea = a.edges_;
  auto eb = b.edges_;
  std::sort(ea.begin(), ea.end());
  std::sort(eb.begin(), eb.end());
  return ea == eb;
}

std::string_view to_string(ViolationKind kind) noexcept {
  switch (kind) {
    case ViolationKind::missing_role: return "missing-role";
    case ViolationKind::missing_edge: return "missing-edge";
    case ViolationKind::extra_edge: return "extra-edge";
    case ViolationKind::non_canonical_pair: return "non-canonical-pair";
    case ViolationKind::dangling_edge: return "dangling-edge";
    case ViolationKind::polarity_inconsistency: return "polarity-inconsistency";
  }
  return "unknown";
}

std::size_t ValidationReport::count(ViolationKind kind) const noexcept {
  return static_cast<std::size_t>(std::count_if(violations.begin(), violations.end(),
                                                [kind](const auto& v) { return v.kind == kind; }));
}

namespace {

std::string edge_name(NodeRole src, NodeRole dst) {
  return std::string(to_tag(src)) + "->" + std::string(to_tag(dst));
}

}  // namespace

ValidationReport validate_schema(const InfluenceGraph& g) {
  ValidationReport report;
  report.node_count = g.node_count();
  report.edge_count = g.edges().size();
  auto add = [&](ViolationKind kind, std::string detail) {
    report.violations.push_back({kind, std::move(detail)});
  };

  for (NodeRole role : kAllRoles) {
    if (!g.has(role)) add(ViolationKind::missing_role, std::string(to_tag(role)));
  }

  std::set<RolePair> seen;
  for (const auto& e : g.edges()) {
    const auto name = edge_name(e.src, e.dst);
    if (e.src == e.dst || !canonical_index(e.src, e.dst)) {
      add(ViolationKind::non_canonical_pair, name);
    }
    if (!g.has(e.src) || !g.has(e.dst)) add(ViolationKind::dangling_edge, name);
    if (!seen.insert({e.src, e.dst}).second) add(ViolationKind::extra_edge, name);
    if (auto want = required_polarity(e.src, e.dst); want && *want != e.polarity) {
      add(ViolationKind::polarity_inconsistency,
          name + " must be " + std::string(to_string(*want)));
    }
  }

  for (const auto& [src, dst] : kCanonicalPairs) {
    if (g.has(src) && g.has(dst) && !seen.contains({src, dst})) {
      add(ViolationKind::missing_edge, edge_name(src, dst));
    }
  }
  return report;
}

StructureClass::StructureClass(std::vector<Triple> triples) : triples_(std::move(triples)) {
  std::sort(triples_.begin(), triples_.end());
}

bool StructureClass::contains(NodeRole src, NodeRole dst, Polarity p) const noexcept {
  return std::binary_search(triples_.begin(), triples_.end(), Triple{src, dst, p});
}

StructureClass structure_class(const InfluenceGraph& g) {
  const auto report = validate_schema(g);
  if (!report.valid()) {
    throw InvalidGraphError("structure_class needs a schema-valid graph; first violation: " +
                            std::string(to_string(report.violations.front().kind)) + " " +
                            report.violations.front().detail);
  }
  std::vector<StructureClass::Triple> triples;
  triples.reserve(g.edges().size());
  for (const auto& e : g.edges()) triples.emplace_back(e.src, e.dst, e.polarity);
  return StructureClass(std::move(triples));
}

std::array<Polarity, kCanonicalEdgeCount> canonical_polarities(std::size_t structure_index) {
  if (structure_index >= kStructureCount) {
    throw std::out_of_range("structure index must be 0 or 1");
  }
  using P = Polarity;
  std::array<Polarity, kCanonicalEdgeCount> pol = {
      P::hurts,  // C+ -> S
      P::helps,  // C- -> S
      P::hurts,  // S  -> M-
      P::helps,  // S  -> M+
      P::hurts,  // S- -> M+
      P::helps,  // M- -> H-
      P::hurts,  // M- -> H+
      P::helps,  // M+ -> H+
      P::hurts,  // M+ -> H-
  };
  if (structure_index == 1) {
    pol[0] = flip(pol[0]);
    pol[1] = flip(pol[1]);
  }
  return pol;
}

InfluenceGraph make_complete_graph(const std::array<std::string, kRoleCount>& labels,
                                   std::size_t structure_index) {
  const auto pol = canonical_polarities(structure_index);
  InfluenceGraph g;
  for (NodeRole role : kAllRoles) g.add_node(role, labels[index_of(role)]);
  for (std::size_t i = 0; i < kCanonicalPairs.size(); ++i) {
    g.add_edge(kCanonicalPairs[i].first, kCanonicalPairs[i].second, pol[i]);
  }
  return g;
}

std::string_view strip_role_prefix(std::string_view label) noexcept {
  std::string_view s = text::trim(label);
  const std::size_t colon = s.find(':');
  if (colon == std::string_view::npos) return s;
  const std::string_view head = text::trim(s.substr(0, colon));
  if (!role_from_tag(head)) return s;
  return text::trim(s.substr(colon + 1));
}

std::string normalize_label(std::string_view label) {
  const auto words = text::split_whitespace(text::to_lower(strip_role_prefix(label)));
  std::string out;
  for (const auto& w : words) {
    if (!out.empty()) out += ' ';
    out += w;
  }
  return out;
}

namespace {

std::string require_label(const InfluenceGraph& g, NodeRole role) {
  const auto& l = g.label(role);
  if (!l) throw MissingNodeError(std::string(to_tag(role)));
  return std::string(strip_role_prefix(*l));
}

std::string strip_more_token(std::string_view label) {
  std::string_view s = text::trim(label);
  if (text::starts_with_ci(s, "MORE") && (s.size() == 4 || s[4] == ' ' || s[4] == '\t')) {
    std::string_view rest = text::trim(s.substr(4));
    if (!rest.empty()) return std::string(rest);
  }
  return std::string(s);
}

}  // namespace

ChainGraph prune_to_strengthening_chain(const InfluenceGraph& g,
                                        std::optional<std::string_view> query_hypothesis) {
  ChainGraph chain;
  chain.contextualizer = require_label(g, NodeRole::contextualizer_plus);
  chain.situation = require_label(g, NodeRole::situation);
  chain.mediator = require_label(g, NodeRole::mediator_plus);
  if (query_hypothesis && !text::trim(*query_hypothesis).empty()) {
    chain.hypothesis = std::string(*query_hypothesis);
  } else {
    chain.hypothesis = strip_more_token(require_label(g, NodeRole::hypothesis_plus));
  }
  return chain;
}

RedundancyReport detect_redundancy(const InfluenceGraph& g) {
  static constexpr std::array<NodeRole, 4> kChecked = {
      NodeRole::contextualizer_plus, NodeRole::contextualizer_minus, NodeRole::mediator_plus,
      NodeRole::mediator_minus};
  RedundancyReport report;
  for (std::size_t i = 0; i < kChecked.size(); ++i) {
    const auto& a = g.label(kChecked[i]);
    if (!a) continue;
    const auto na = normalize_label(*a);
    for (std::size_t j = i + 1; j < kChecked.size(); ++j) {
      const auto& b = g.label(kChecked[j]);
      if (b && normalize_label(*b) == na) report.collisions.emplace_back(kChecked[i], kChecked[j]);
    }
  }
  report.redundant = !report.collisions.empty();
  return report;
}

}  // namespace infgraph
