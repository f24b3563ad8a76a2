// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The infgraph Authors

#include "infgraph/template.hpp"

#include <array>
#include <vector>

#include "infgraph/dot.hpp"
#include "infgraph/errors.hpp"

namespace infgraph {

std::string_view to_string(Label l) noexcept {
  return l == Label::intensifies ? "intensifies" : "attenuates";
}

std::string_view to_string(Source s) noexcept {
  switch (s) {
    case Source::snli: return "snli";
    case Source::social: return "social";
    case Source::atomic: return "atomic";
  }
  return "unknown";
}

std::optional<Label> label_from_string(std::string_view s) noexcept {
  if (s == "intensifies") return Label::intensifies;
  if (s == "attenuates") return Label::attenuates;
  return std::nullopt;
}

std::optional<Source> source_from_string(std::string_view s) noexcept {
  if (s == "snli") return Source::snli;
  if (s == "social") return Source::social;
  if (s == "atomic") return Source::atomic;
  return std::nullopt;
}

namespace {

struct Markers {
  std::string_view premise;
  std::string_view situation;
  std::string_view less;
  std::string_view more;  // empty for the single-hypothesis form
};

constexpr Markers kSituationMarkers{"Premise: ", " | Situation : ", " | Less : ", " | More : "};
constexpr Markers kUpdateMarkers{"Premise: ", " | Update: ", " | less/ more: ", ""};

const Markers& markers_for(TemplateFormat f) {
  return f == TemplateFormat::situation ? kSituationMarkers : kUpdateMarkers;
}

// TAB and line breaks would break the one-pair-per-line corpus files.
std::string canon(std::string_view field) {
  std::string out(field);
  for (char& c : out) {
    if (c == '\t' || c == '\n' || c == '\r') c = ' ';
  }
  return out;
}

InputSequence assemble(TemplateFormat format, std::string_view premise, std::string_view situation,
                       std::string_view less, std::string_view more) {
  const Markers& m = markers_for(format);
  std::string s;
  s += m.premise;
  s += canon(premise);
  s += m.situation;
  s += canon(situation);
  s += m.less;
  if (format == TemplateFormat::situation) {
    s += canon(less);
    s += m.more;
    s += canon(more);
  } else {
    s += canon(more);
  }
  return {std::move(s)};
}

std::string marker_name(std::string_view marker) {
  std::string_view m = marker;
  if (m.starts_with(" | ")) m.remove_prefix(3);
  while (!m.empty() && (m.back() == ' ' || m.back() == ':')) m.remove_suffix(1);
  return std::string(m);
}

}  // namespace

SeqPair encode_wiqa(const WiqaExample& ex, TemplateFormat format) {
  const auto& g = ex.graph;
  for (NodeRole r : {NodeRole::situation, NodeRole::hypothesis_plus, NodeRole::hypothesis_minus}) {
    if (!g.has(r)) throw MissingNodeError(std::string(to_tag(r)));
  }
  SeqPair pair;
  pair.input = assemble(format, ex.passage, *g.label(NodeRole::situation),
                        *g.label(NodeRole::hypothesis_minus), *g.label(NodeRole::hypothesis_plus));
  pair.output = serialize_dot(g);
  return pair;
}

InputSequence encode_defeasible(const DefeasibleQuery& q, TemplateFormat format) {
  if (format == TemplateFormat::update) {
    return assemble(format, q.premise, q.update, q.hypothesis, q.hypothesis);
  }
  return assemble(format, q.premise, q.update, "LESS " + q.hypothesis, "MORE " + q.hypothesis);
}

DecodedInput decode_input(std::string_view text, TemplateFormat format) {
  const Markers& m = markers_for(format);
  if (!text.starts_with(m.premise)) {
    throw MalformedSequenceError(marker_name(m.premise), "missing");
  }

  std::vector<std::string_view> pipes = {m.situation, m.less};
  if (!m.more.empty()) pipes.push_back(m.more);

  // Leftmost-first: each marker is searched after the previous one.
  std::vector<std::size_t> begins;
  std::size_t cursor = m.premise.size();
  for (std::string_view marker : pipes) {
    const std::size_t at = text.find(marker, cursor);
    if (at == std::string_view::npos) throw MalformedSequenceError(marker_name(marker), "missing");
    begins.push_back(at);
    cursor = at + marker.size();
  }

  std::vector<std::string_view> payloads;
  std::size_t from = m.premise.size();
  for (std::size_t i = 0; i < pipes.size(); ++i) {
    payloads.push_back(text.substr(from, begins[i] - from));
    from = begins[i] + pipes[i].size();
  }
  payloads.push_back(text.substr(from));

  // A marker inside a payload means the sequence carries it twice.
  std::size_t first_dup = std::string_view::npos;
  std::string_view dup_marker;
  std::size_t payload_start = m.premise.size();
  for (std::size_t i = 0; i < payloads.size(); ++i) {
    for (std::string_view marker : pipes) {
      const std::size_t at = payloads[i].find(marker);
      if (at != std::string_view::npos && payload_start + at < first_dup) {
        first_dup = payload_start + at;
        dup_marker = marker;
      }
    }
    if (i < pipes.size()) payload_start = begins[i] + pipes[i].size();
  }
  if (first_dup != std::string_view::npos) {
    throw MalformedSequenceError(marker_name(dup_marker), "duplicated");
  }

  DecodedInput out;
  out.premise = std::string(payloads[0]);
  out.situation = std::string(payloads[1]);
  out.less_hypothesis = std::string(payloads[2]);
  out.more_hypothesis = std::string(format == TemplateFormat::situation ? payloads[3] : payloads[2]);
  return out;
}

}  // namespace infgraph
