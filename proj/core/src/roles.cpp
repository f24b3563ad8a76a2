// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The infgraph Authors

#include "infgraph/roles.hpp"

#include <cctype>
#include <string>

#include "infgraph/text.hpp"

namespace infgraph {

std::string_view to_tag(NodeRole role) noexcept {
  switch (role) {
    case NodeRole::contextualizer_plus: return "C+";
    case NodeRole::contextualizer_minus: return "C-";
    case NodeRole::situation: return "S";
    case NodeRole::situation_minus: return "S-";
    case NodeRole::mediator_plus: return "M+";
    case NodeRole::mediator_minus: return "M-";
    case NodeRole::hypothesis_plus: return "H+";
    case NodeRole::hypothesis_minus: return "H-";
  }
  return "?";
}

std::optional<NodeRole> role_from_tag(std::string_view tag) noexcept {
  std::string ascii(tag);
  // U+2212 MINUS SIGN, as typeset in some copies of the role table.
  if (auto pos = ascii.find("\xE2\x88\x92"); pos != std::string::npos) {
    ascii.replace(pos, 3, "-");
  }
  for (NodeRole role : kAllRoles) {
    if (to_tag(role) == ascii) return role;
  }
  return std::nullopt;
}

std::string_view to_string(Polarity p) noexcept { return p == Polarity::helps ? "helps" : "hurts"; }

std::optional<Polarity> polarity_from_string(std::string_view s) noexcept {
  if (s == "helps") return Polarity::helps;
  if (s == "hurts") return Polarity::hurts;
  return std::nullopt;
}

std::optional<std::size_t> canonical_index(NodeRole src, NodeRole dst) noexcept {
  for (std::size_t i = 0; i < kCanonicalPairs.size(); ++i) {
    if (kCanonicalPairs[i].first == src && kCanonicalPairs[i].second == dst) return i;
  }
  return std::nullopt;
}

std::optional<Polarity> required_polarity(NodeRole src, NodeRole dst) noexcept {
  using R = NodeRole;
  if (src == R::mediator_plus && dst == R::hypothesis_plus) return Polarity::helps;
  if (src == R::mediator_minus && dst == R::hypothesis_minus) return Polarity::helps;
  if (src == R::mediator_plus && dst == R::hypothesis_minus) return Polarity::hurts;
  if (src == R::mediator_minus && dst == R::hypothesis_plus) return Polarity::hurts;
  return std::nullopt;
}

namespace text {

std::string_view trim(std::string_view s) noexcept {
  auto is_space = [](char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; };
  while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
  return s;
}

std::string to_lower(std::string_view s) {
  std::string out(s);
  for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

std::vector<std::string> split_whitespace(std::string_view s) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    std::size_t j = i;
    while (j < s.size() && !std::isspace(static_cast<unsigned char>(s[j]))) ++j;
    if (j > i) out.emplace_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

bool starts_with_ci(std::string_view s, std::string_view prefix) noexcept {
  if (s.size() < prefix.size()) return false;
  for (std::size_t i = 0; i < prefix.size(); ++i) {
    if (std::tolower(static_cast<unsigned char>(s[i])) !=
        std::tolower(static_cast<unsigned char>(prefix[i]))) {
      return false;
    }
  }
  return true;
}

}  // namespace text
}  // namespace infgraph
