// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The infgraph Authors

#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string_view>
#include <utility>

namespace infgraph {

/// Closed set of influence-graph role tags. The +/- suffix marks a
/// strengthener/weakener; S is the situation (the query's update).
enum class NodeRole : std::uint8_t {
  contextualizer_plus,
  contextualizer_minus,
  situation,
  situation_minus,
  mediator_plus,
  mediator_minus,
  hypothesis_plus,
  hypothesis_minus,
};

inline constexpr std::size_t kRoleCount = 8;

inline constexpr std::array<NodeRole, kRoleCount> kAllRoles = {
    NodeRole::contextualizer_plus, NodeRole::contextualizer_minus, NodeRole::situation,
    NodeRole::situation_minus,     NodeRole::mediator_plus,        NodeRole::mediator_minus,
    NodeRole::hypothesis_plus,     NodeRole::hypothesis_minus,
};

enum class Polarity : std::uint8_t { helps, hurts };

/// Tag as written in DOT literals: "C+", "C-", "S", "S-", "M+", "M-", "H+", "H-".
std::string_view to_tag(NodeRole role) noexcept;

/// Accepts the ASCII tags and U+2212 as the minus sign.
std::optional<NodeRole> role_from_tag(std::string_view tag) noexcept;

std::string_view to_string(Polarity p) noexcept;
std::optional<Polarity> polarity_from_string(std::string_view s) noexcept;

constexpr Polarity flip(Polarity p) noexcept {
  return p == Polarity::helps ? Polarity::hurts : Polarity::helps;
}

constexpr std::size_t index_of(NodeRole role) noexcept { return static_cast<std::size_t>(role); }

using RolePair = std::pair<NodeRole, NodeRole>;

inline constexpr std::size_t kCanonicalEdgeCount = 9;

/// The nine role pairs of a complete graph, in canonical emission order.
inline constexpr std::array<RolePair, kCanonicalEdgeCount> kCanonicalPairs = {{
    {NodeRole::contextualizer_plus, NodeRole::situation},
    {NodeRole::contextualizer_minus, NodeRole::situation},
    {NodeRole::situation, NodeRole::mediator_minus},
    {NodeRole::situation, NodeRole::mediator_plus},
    {NodeRole::situation_minus, NodeRole::mediator_plus},
    {NodeRole::mediator_minus, NodeRole::hypothesis_minus},
    {NodeRole::mediator_minus, NodeRole::hypothesis_plus},
    {NodeRole::mediator_plus, NodeRole::hypothesis_plus},
    {NodeRole::mediator_plus, NodeRole::hypothesis_minus},
}};

/// Position in kCanonicalPairs, or nullopt for a non-canonical pair.
std::optional<std::size_t> canonical_index(NodeRole src, NodeRole dst) noexcept;

/// Polarity forced on mediator->hypothesis edges by the +/- semantics;
/// nullopt for any other pair.
std::optional<Polarity> required_polarity(NodeRole src, NodeRole dst) noexcept;

}  // namespace infgraph
