// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The infgraph Authors

#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "infgraph/graph.hpp"

namespace infgraph {

/// Parses the influence-graph DOT dialect:
///
///   strict digraph { "TAG : label" -> "TAG : label" [label=helps]; ... }
///
/// Whitespace-tolerant. Identical node literals merge into one node.
/// Throws DotSyntaxError, UnknownRoleError, ConflictingLabelError or
/// InvalidPolarityError.
InfluenceGraph parse_dot(std::string_view text);

/// Canonical text: canonical edges in kCanonicalPairs order, then any other
/// edges in input order; single spaces as in the published sample.
/// Throws DanglingEdgeError if an edge endpoint has no node, and
/// InvalidGraphError for nodes that no edge touches (the dialect has no
/// node statements).
std::string serialize_dot(const InfluenceGraph& g);

enum class RepairKind { drop, coerce, conflict, normalize, unrecoverable };

std::string_view to_string(RepairKind kind) noexcept;

struct RepairAction {
  RepairKind kind;
  std::size_t statement;  // 1-based; 0 when not tied to a statement
  std::string detail;
};

using RepairLog = std::vector<RepairAction>;

struct RepairResult {
  InfluenceGraph graph;
  RepairLog log;
};

/// Best-effort parse for third-party generators: drops unparseable
/// statements, maps help/hurt/positive/negative onto helps/hurts and keeps
/// the first label when a role is given two. Every action is logged.
/// Throws UnrecoverableDotError only when there is no digraph block.
RepairResult repair_dot(std::string_view text);

}  // namespace infgraph
