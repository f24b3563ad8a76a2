// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The infgraph Authors

#pragma once

#include <array>
#include <compare>
#include <optional>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

#include "infgraph/roles.hpp"

namespace infgraph {

/// A role-tagged node. Labels are non-empty after trimming and carry no
/// double quote or line break, so they always fit inside a DOT literal.
class InfluenceNode {
 public:
  InfluenceNode(NodeRole role, std::string label);

  NodeRole role() const noexcept { return role_; }
  const std::string& label() const noexcept { return label_; }

  friend bool operator==(const InfluenceNode&, const InfluenceNode&) = default;

 private:
  NodeRole role_;
  std::string label_;
};

/// Throws InvalidLabelError when `label` cannot be a node label.
void check_label(std::string_view label);

struct PolarityEdge {
  NodeRole src;
  NodeRole dst;
  Polarity polarity;

  friend auto operator<=>(const PolarityEdge&, const PolarityEdge&) = default;
};

/// Influence graph with at most one node per role and an ordered edge list.
///
/// Completeness is not enforced here: generators produce partial or
/// malformed graphs and those still have to be scored. validate_schema()
/// decides whether a graph has the full 8-node / 9-edge shape.
class InfluenceGraph {
 public:
  InfluenceGraph() = default;

  /// Adds a node. Re-adding the same role with the same label is a no-op;
  /// a different label throws ConflictingLabelError.
  InfluenceGraph& add_node(NodeRole role, std::string label);
  InfluenceGraph& add_edge(NodeRole src, NodeRole dst, Polarity polarity);

  /// Replaces the label of an existing or missing role.
  InfluenceGraph& set_label(NodeRole role, std::string label);

  bool has(NodeRole role) const noexcept { return labels_[index_of(role)].has_value(); }
  const std::optional<std::string>& label(NodeRole role) const noexcept {
    return labels_[index_of(role)];
  }
  std::vector<InfluenceNode> nodes() const;
  std::size_t node_count() const noexcept;
  const std::vector<PolarityEdge>& edges() const noexcept { return edges_; }
  bool empty() const noexcept { return node_count() == 0 && edges_.empty(); }

  std::optional<Polarity> polarity(NodeRole src, NodeRole dst) const noexcept;

  /// Structural equality: same labels per role and the same edge multiset,
  /// edge order ignored.
  friend bool operator==(const InfluenceGraph& a, const InfluenceGraph& b);

 private:
  std::array<std::optional<std::string>, kRoleCount> labels_{};
  std::vector<PolarityEdge> edges_;
};

enum class ViolationKind {
  missing_role,
  missing_edge,
  extra_edge,
  non_canonical_pair,
  dangling_edge,
  polarity_inconsistency,
};

std::string_view to_string(ViolationKind kind) noexcept;

struct Violation {
  ViolationKind kind;
  std::string detail;
};

struct ValidationReport {
  std::vector<Violation> violations;
  std::size_t node_count = 0;
  std::size_t edge_count = 0;

  bool valid() const noexcept { return violations.empty(); }
  std::size_t count(ViolationKind kind) const noexcept;
};

/// Checks the complete-graph shape. Never throws; violations are data.
ValidationReport validate_schema(const InfluenceGraph& g);

/// Canonical, order-independent signature of a graph's edge structure.
class StructureClass {
 public:
  using Triple = std::tuple<NodeRole, NodeRole, Polarity>;

  explicit StructureClass(std::vector<Triple> triples);

  const std::vector<Triple>& triples() const noexcept { return triples_; }
  bool contains(NodeRole src, NodeRole dst, Polarity p) const noexcept;

  friend auto operator<=>(const StructureClass&, const StructureClass&) = default;

 private:
  std::vector<Triple> triples_;
};

/// Throws InvalidGraphError when `g` fails validate_schema.
StructureClass structure_class(const InfluenceGraph& g);

/// Edge polarities (in kCanonicalPairs order) of the two attainable
/// complete-graph structures. Index 0 is the structure of the published
/// sample graph (C+ hurts S); index 1 flips the contextualizer layer.
std::array<Polarity, kCanonicalEdgeCount> canonical_polarities(std::size_t structure_index);

inline constexpr std::size_t kStructureCount = 2;

/// Complete graph from per-role labels (kAllRoles order) and a structure index.
InfluenceGraph make_complete_graph(const std::array<std::string, kRoleCount>& labels,
                                   std::size_t structure_index);

/// Linear C+ -> S -> M+ -> H path shown to human judges.
struct ChainGraph {
  std::string contextualizer;
  std::string situation;
  std::string mediator;
  std::string hypothesis;

  friend bool operator==(const ChainGraph&, const ChainGraph&) = default;
};

/// Keeps only the strengthening chain. The hypothesis comes from
/// `query_hypothesis` when given, otherwise from H+ with its leading MORE
/// token removed. Throws MissingNodeError naming the absent role.
ChainGraph prune_to_strengthening_chain(const InfluenceGraph& g,
                                        std::optional<std::string_view> query_hypothesis = {});

struct RedundancyReport {
  bool redundant = false;
  std::vector<RolePair> collisions;
};

/// Flags graphs whose contextualizer/mediator labels repeat after normalization.
RedundancyReport detect_redundancy(const InfluenceGraph& g);

/// Removes a leading "TAG :" / "TAG:" role prefix, if any.
std::string_view strip_role_prefix(std::string_view label) noexcept;

/// Lowercase, whitespace-collapsed, prefix-stripped form used for equality.
std::string normalize_label(std::string_view label);

}  // namespace infgraph
