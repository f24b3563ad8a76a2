// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The infgraph Authors

#include "infgraph/dot.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <optional>

#include "infgraph/errors.hpp"
#include "infgraph/text.hpp"

namespace infgraph {
namespace {

struct NodeLiteral {
  NodeRole role;
  std::string label;
};

struct Statement {
  NodeLiteral src;
  NodeLiteral dst;
  std::string polarity;  // raw attribute value
};

/// Cursor over the input; positions reported are byte offsets into the
/// original text (base + local offset).
class Scanner {
 public:
  Scanner(std::string_view text, std::size_t base) : text_(text), base_(base) {}

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return at_end() ? '\0' : text_[pos_]; }
  std::size_t offset() const { return base_ + pos_; }

  bool try_consume(std::string_view token) {
    skip_ws();
    if (text_.substr(pos_, token.size()) == token) {
      pos_ += token.size();
      return true;
    }
    return false;
  }

  void expect(std::string_view token) {
    if (!try_consume(token)) throw DotSyntaxError(offset(), "'" + std::string(token) + "'");
  }

  bool try_keyword(std::string_view word) {
    skip_ws();
    if (text_.substr(pos_, word.size()) != word) return false;
    const std::size_t end = pos_ + word.size();
    if (end < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[end])) || text_[end] == '_')) {
      return false;
    }
    pos_ = end;
    return true;
  }

  NodeLiteral node_literal() {
    skip_ws();
    if (peek() != '"') throw DotSyntaxError(offset(), "'\"' opening a node literal");
    const std::size_t open = pos_++;
    const std::size_t close = text_.find('"', pos_);
    if (close == std::string_view::npos) throw DotSyntaxError(base_ + open, "closing '\"'");
    const std::string_view body = text_.substr(pos_, close - pos_);
    if (body.find_first_of("\n\r") != std::string_view::npos) {
      throw DotSyntaxError(base_ + open, "node literal on a single line");
    }
    const std::size_t colon = body.find(':');
    if (colon == std::string_view::npos) throw DotSyntaxError(base_ + open + 1, "'TAG : label'");
    const std::string_view tag = text::trim(body.substr(0, colon));
    const std::string_view label = text::trim(body.substr(colon + 1));
    auto role = role_from_tag(tag);
    if (!role) throw UnknownRoleError("unknown role tag '" + std::string(tag) + "'");
    if (label.empty()) throw DotSyntaxError(base_ + open + 1 + colon + 1, "non-empty label");
    pos_ = close + 1;
    return {*role, std::string(label)};
  }

  std::string attribute_value() {
    skip_ws();
    if (peek() == '"') {
      const std::size_t close = text_.find('"', pos_ + 1);
      if (close == std::string_view::npos) throw DotSyntaxError(offset(), "closing '\"'");
      std::string v(text_.substr(pos_ + 1, close - pos_ - 1));
      pos_ = close + 1;
      return v;
    }
    const std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_' || text_[pos_] == '-')) {
      ++pos_;
    }
    if (pos_ == start) throw DotSyntaxError(offset(), "attribute value");
    return std::string(text_.substr(start, pos_ - start));
  }

  Statement statement() {
    Statement s;
    s.src = node_literal();
    expect("->");
    s.dst = node_literal();
    expect("[");
    if (!try_keyword("label")) throw DotSyntaxError(offset(), "'label'");
    expect("=");
    s.polarity = attribute_value();
    expect("]");
    return s;
  }

 private:
  std::string_view text_;
  std::size_t base_;
  std::size_t pos_ = 0;
};

std::string literal(NodeRole role, const std::string& label) {
  std::string out = "\"";
  out += to_tag(role);
  out += " : ";
  out += label;
  out += '"';
  return out;
}

std::optional<Polarity> coerce_polarity(std::string_view raw) {
  const std::string v = text::to_lower(text::trim(raw));
  if (v == "helps" || v == "help" || v == "positive") return Polarity::helps;
  if (v == "hurts" || v == "hurt" || v == "negative") return Polarity::hurts;
  return std::nullopt;
}

}  // namespace

InfluenceGraph parse_dot(std::string_view text) {
  Scanner sc(text, 0);
  if (!sc.try_keyword("strict")) throw DotSyntaxError(sc.offset(), "'strict'");
  if (!sc.try_keyword("digraph")) throw DotSyntaxError(sc.offset(), "'digraph'");
  sc.expect("{");

  InfluenceGraph g;
  std::size_t index = 0;
  while (true) {
    sc.skip_ws();
    if (sc.peek() == '}') break;
    if (sc.at_end()) throw DotSyntaxError(sc.offset(), "'}'");
    ++index;
    Statement s = sc.statement();
    auto pol = polarity_from_string(s.polarity);
    if (!pol) throw InvalidPolarityError(index, s.polarity);
    g.add_node(s.src.role, std::move(s.src.label));
    g.add_node(s.dst.role, std::move(s.dst.label));
    g.add_edge(s.src.role, s.dst.role, *pol);
    sc.try_consume(";");
  }
  sc.expect("}");
  sc.skip_ws();
  if (!sc.at_end()) throw DotSyntaxError(sc.offset(), "end of input");
  return g;
}

std::string serialize_dot(const InfluenceGraph& g) {
  std::array<bool, kRoleCount> touched{};
  for (const auto& e : g.edges()) {
    if (!g.has(e.src) || !g.has(e.dst)) {
      throw DanglingEdgeError("edge " + std::string(to_tag(e.src)) + "->" +
                              std::string(to_tag(e.dst)) + " references a missing node");
    }
    touched[index_of(e.src)] = touched[index_of(e.dst)] = true;
  }
  for (NodeRole role : kAllRoles) {
    if (g.has(role) && !touched[index_of(role)]) {
      throw InvalidGraphError("node " + std::string(to_tag(role)) +
                              " has no edge and cannot be written in the DOT dialect");
    }
  }

  std::vector<const PolarityEdge*> ordered;
  ordered.reserve(g.edges().size());
  for (const auto& [src, dst] : kCanonicalPairs) {
    for (const auto& e : g.edges()) {
      if (e.src == src && e.dst == dst) ordered.push_back(&e);
    }
  }
  for (const auto& e : g.edges()) {
    if (!canonical_index(e.src, e.dst)) ordered.push_back(&e);
  }

  std::string out = "strict digraph { ";
  for (const PolarityEdge* e : ordered) {
    out += literal(e->src, *g.label(e->src));
    out += " -> ";
    out += literal(e->dst, *g.label(e->dst));
    out += " [label=";
    out += to_string(e->polarity);
    out += "]; ";
  }
  out += '}';
  return out;
}

std::string_view to_string(RepairKind kind) noexcept {
  switch (kind) {
    case RepairKind::drop: return "drop";
    case RepairKind::coerce: return "coerce";
    case RepairKind::conflict: return "conflict";
    case RepairKind::normalize: return "normalize";
    case RepairKind::unrecoverable: return "unrecoverable";
  }
  return "unknown";
}

namespace {

/// Splits a digraph body into statement spans. A statement ends right after
/// its `[label=...]` block (plus an optional ';'), so one garbled statement
/// cannot swallow its neighbours through an unbalanced quote.
struct Span {
  std::size_t begin;
  std::size_t end;
};

std::optional<std::size_t> attribute_block_end(std::string_view body, std::size_t from) {
  std::size_t pos = from;
  while ((pos = body.find('[', pos)) != std::string_view::npos) {
    std::size_t p = pos + 1;
    auto skip = [&] {
      while (p < body.size() && std::isspace(static_cast<unsigned char>(body[p]))) ++p;
    };
    skip();
    if (body.substr(p, 5) == "label") {
      p += 5;
      skip();
      if (p < body.size() && body[p] == '=') {
        ++p;
        skip();
        bool quoted = p < body.size() && body[p] == '"';
        if (quoted) ++p;
        while (p < body.size() && (std::isalnum(static_cast<unsigned char>(body[p])) || body[p] == '_' || body[p] == '-')) ++p;
        if (quoted && p < body.size() && body[p] == '"') ++p;
        skip();
        if (p < body.size() && body[p] == ']') return p + 1;
      }
    }
    ++pos;
  }
  return std::nullopt;
}

std::vector<Span> split_statements(std::string_view body) {
  std::vector<Span> spans;
  std::size_t start = 0;
  while (start < body.size()) {
    auto end = attribute_block_end(body, start);
    if (!end) {
      spans.push_back({start, body.size()});
      break;
    }
    std::size_t stop = *end;
    std::size_t p = stop;
    while (p < body.size() && std::isspace(static_cast<unsigned char>(body[p]))) ++p;
    if (p < body.size() && body[p] == ';') stop = p + 1;
    spans.push_back({start, stop});
    start = stop;
  }
  return spans;
}

}  // namespace

RepairResult repair_dot(std::string_view text) {
  RepairResult result;
  auto& log = result.log;

  const std::size_t kw = text.find("digraph");
  if (kw == std::string_view::npos) {
    throw UnrecoverableDotError("no digraph block found");
  }
  if (text::trim(text.substr(0, kw)) != "strict") {
    log.push_back({RepairKind::normalize, 0, "text before 'digraph' is not exactly 'strict'"});
  }
  const std::size_t open = text.find('{', kw);
  if (open == std::string_view::npos) {
    throw UnrecoverableDotError("digraph block has no opening brace");
  }
  if (!text::trim(text.substr(kw + 7, open - kw - 7)).empty()) {
    log.push_back({RepairKind::normalize, 0, "ignored graph name"});
  }
  std::size_t close = text.rfind('}');
  if (close == std::string_view::npos || close < open) {
    log.push_back({RepairKind::normalize, 0, "missing closing brace"});
    close = text.size();
  } else if (!text::trim(text.substr(close + 1)).empty()) {
    log.push_back({RepairKind::normalize, 0, "ignored text after closing brace"});
  }
  const std::string_view body = text.substr(open + 1, close - open - 1);

  std::size_t index = 0;
  for (const Span& span : split_statements(body)) {
    std::string_view stmt_text = body.substr(span.begin, span.end - span.begin);
    if (text::trim(stmt_text).empty()) continue;
    ++index;
    std::string_view stripped = text::trim(stmt_text);
    if (stripped == ";") {
      log.push_back({RepairKind::drop, index, "empty statement"});
      continue;
    }
    Statement s;
    try {
      Scanner sc(stmt_text, open + 1 + span.begin);
      s = sc.statement();
      sc.try_consume(";");
      sc.skip_ws();
      if (!sc.at_end()) throw DotSyntaxError(sc.offset(), "end of statement");
    } catch (const Error& e) {
      log.push_back({RepairKind::drop, index, e.what()});
      continue;
    }
    Polarity pol;
    if (auto exact = polarity_from_string(s.polarity)) {
      pol = *exact;
    } else if (auto coerced = coerce_polarity(s.polarity)) {
      pol = *coerced;
      log.push_back({RepairKind::coerce, index,
                     "'" + s.polarity + "' -> " + std::string(to_string(pol))});
    } else {
      log.push_back({RepairKind::drop, index, "unknown polarity '" + s.polarity + "'"});
      continue;
    }
    for (NodeLiteral* n : {&s.src, &s.dst}) {
      const auto& existing = result.graph.label(n->role);
      if (existing && *existing != n->label) {
        log.push_back({RepairKind::conflict, index,
                       std::string(to_tag(n->role)) + ": kept '" + *existing + "', ignored '" +
                           n->label + "'"});
      } else if (!existing) {
        result.graph.add_node(n->role, n->label);
      }
    }
    result.graph.add_edge(s.src.role, s.dst.role, pol);
  }
  return result;
}

}  // namespace infgraph
