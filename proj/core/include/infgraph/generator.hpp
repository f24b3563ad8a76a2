// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The infgraph Authors

#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "infgraph/dot.hpp"
#include "infgraph/template.hpp"

namespace infgraph {

enum class GenerationErrorKind { malformed_input, transport, timeout, response_schema, internal };

std::string_view to_string(GenerationErrorKind kind) noexcept;

struct GenerationError {
  GenerationErrorKind kind;
  std::string detail;
};

struct GenerationResult {
  std::string raw;
  std::optional<InfluenceGraph> graph;
  bool valid = false;  // raw parsed (possibly after repair) into a schema-valid graph
  RepairLog repairs;
  std::optional<GenerationError> error;
  std::string metadata;  // opaque backend metadata, e.g. the server's decoding policy
};

/// Strict parse, falling back to repair_dot. `valid` requires the resulting
/// graph to pass validate_schema. Garbage text yields no graph and a single
/// `unrecoverable` repair entry.
GenerationResult validity_gate(std::string raw);

/// Graph generator contract. Implementations are deterministic for a fixed
/// configuration and report transport-level failures in the result rather
/// than throwing.
class GeneratorBackend {
 public:
  virtual ~GeneratorBackend() = default;
  virtual GenerationResult generate(const InputSequence& input) const = 0;
  /// false when generate() must not be called from several threads at once.
  virtual bool concurrent() const noexcept { return true; }
};

/// Reserved per-role placeholder used by the copy baseline; `avoid` lists
/// lowercased tokens the placeholder must not collide with.
std::string placeholder_label(NodeRole role, const std::vector<std::string>& avoid);

/// Model-free lower bound: S, H+ and H- are copied from the query, the other
/// five roles get reserved placeholders, and one of the two canonical
/// structures is picked from (seed, input). Throws MalformedSequenceError.
GenerationResult copy_baseline_generate(const InputSequence& input, std::uint64_t seed,
                                        TemplateFormat format = TemplateFormat::situation);

class CopyBaseline final : public GeneratorBackend {
 public:
  explicit CopyBaseline(std::uint64_t seed, TemplateFormat format = TemplateFormat::situation)
      : seed_(seed), format_(format) {}
  GenerationResult generate(const InputSequence& input) const override {
    return copy_baseline_generate(input, seed_, format_);
  }

 private:
  std::uint64_t seed_;
  TemplateFormat format_;
};

/// F1 of the multiset overlap between two token lists; 0 if either is empty.
double token_overlap_f1(const std::vector<std::string>& a, const std::vector<std::string>& b);

/// Nearest-neighbour baseline: returns the graph of the training pair whose
/// input has the highest token-overlap F1 with the query (first pair wins
/// ties), with S, H+ and H- replaced by the query's fields.
class RetrievalBaseline final : public GeneratorBackend {
 public:
  /// Throws EmptyCorpusError, or InvalidGraphError when a pair's output
  /// does not parse.
  explicit RetrievalBaseline(std::vector<SeqPair> corpus,
                             TemplateFormat format = TemplateFormat::situation);

  std::size_t select(const InputSequence& input) const;
  GenerationResult generate(const InputSequence& input) const override;

 private:
  std::vector<SeqPair> corpus_;
  std::vector<std::vector<std::string>> tokens_;
  std::vector<InfluenceGraph> graphs_;
  TemplateFormat format_;
};

struct RemoteConfig {
  std::string endpoint = "http://127.0.0.1:8000/generate";
  std::chrono::milliseconds timeout{30000};
  int max_length = 512;
};

/// Posts {"input", "max_length"} to the endpoint and gates the "output"
/// field of the response.
class RemoteGenerator final : public GeneratorBackend {
 public:
  explicit RemoteGenerator(RemoteConfig config);
  GenerationResult generate(const InputSequence& input) const override;
  const RemoteConfig& config() const noexcept { return config_; }

 private:
  RemoteConfig config_;
  std::string base_;  // scheme://host:port
  std::string path_;
};

struct CorpusGeneration {
  std::vector<GenerationResult> results;  // same order as the inputs
  std::optional<double> validity_rate;    // absent for an empty input list
};

/// Runs `backend` over every input, fanning out over `threads` workers when
/// the backend allows it. Per-item exceptions become error results.
CorpusGeneration generate_corpus(const GeneratorBackend& backend,
                                 const std::vector<InputSequence>& inputs,
                                 std::size_t threads = 1);

}  // namespace infgraph
