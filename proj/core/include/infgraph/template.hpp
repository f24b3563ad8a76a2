// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The infgraph Authors

#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "infgraph/graph.hpp"

namespace infgraph {

enum class Label { intensifies, attenuates };
enum class Source { snli, social, atomic };

std::string_view to_string(Label l) noexcept;
std::string_view to_string(Source s) noexcept;
std::optional<Label> label_from_string(std::string_view s) noexcept;
std::optional<Source> source_from_string(std::string_view s) noexcept;

/// One WIQA passage with its influence graph.
struct WiqaExample {
  std::string id;
  std::string passage;
  InfluenceGraph graph;
};

/// One defeasible inference instance: does `update` strengthen or weaken
/// `hypothesis` given `premise`?
struct DefeasibleQuery {
  std::string id;
  std::string premise;
  std::string hypothesis;
  std::string update;
  Label gold_label = Label::intensifies;
  Source source = Source::snli;

  friend bool operator==(const DefeasibleQuery&, const DefeasibleQuery&) = default;
};

/// `situation` follows the worked training sample:
///   Premise: T | Situation : S | Less : LESS H | More : MORE H
/// `update` is the single-hypothesis form:
///   Premise: T | Update: U | less/ more: H
enum class TemplateFormat { situation, update };

struct InputSequence {
  std::string text;
  friend bool operator==(const InputSequence&, const InputSequence&) = default;
};

struct SeqPair {
  InputSequence input;
  std::string output;  // DOT text
};

struct DecodedInput {
  std::string premise;
  std::string situation;
  std::string less_hypothesis;  // keeps its LESS prefix
  std::string more_hypothesis;  // keeps its MORE prefix
};

/// Input side from passage + graph (S, H-, H+ labels), output = serialize_dot.
/// Throws MissingNodeError.
SeqPair encode_wiqa(const WiqaExample& ex, TemplateFormat format = TemplateFormat::situation);

InputSequence encode_defeasible(const DefeasibleQuery& q,
                                TemplateFormat format = TemplateFormat::situation);

/// Inverse of the encoders. Markers are matched leftmost-first, so payloads
/// may contain a bare '|'. Throws MalformedSequenceError naming the first
/// missing or duplicated marker. In `update` format the single hypothesis
/// payload is returned in both hypothesis fields.
DecodedInput decode_input(std::string_view text,
                          TemplateFormat format = TemplateFormat::situation);

}  // namespace infgraph
