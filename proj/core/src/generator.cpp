// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The infgraph Authors

#include "infgraph/generator.hpp"

#include <algorithm>
#include <atomic>
#include <map>
#include <nlohmann/json.hpp>
#include <random>
#include <thread>

#include "httplib.h"
#include "infgraph/errors.hpp"
#include "infgraph/text.hpp"

namespace infgraph {

std::string_view to_string(GenerationErrorKind kind) noexcept {
  switch (kind) {
    case GenerationErrorKind::malformed_input: return "malformed-input";
    case GenerationErrorKind::transport: return "transport";
    case GenerationErrorKind::timeout: return "timeout";
    case GenerationErrorKind::response_schema: return "response-schema";
    case GenerationErrorKind::internal: return "internal";
  }
  return "unknown";
}

GenerationResult validity_gate(std::string raw) {
  GenerationResult result;
  result.raw = std::move(raw);
  try {
    result.graph = parse_dot(result.raw);
  } catch (const Error&) {
    try {
      auto repaired = repair_dot(result.raw);
      result.graph = std::move(repaired.graph);
      result.repairs = std::move(repaired.log);
    } catch (const UnrecoverableDotError& e) {
      result.repairs.push_back({RepairKind::unrecoverable, 0, e.what()});
    }
  }
  result.valid = result.graph && validate_schema(*result.graph).valid();
  return result;
}

namespace {

std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::vector<std::string> input_tokens(std::string_view s) {
  return text::split_whitespace(text::to_lower(s));
}

}  // namespace

std::string placeholder_label(NodeRole role, const std::vector<std::string>& avoid) {
  std::string label = "__" + std::string(to_tag(role)) + "_placeholder__";
  // Lowercased tokens are compared, so lowercase the candidate too.
  while (std::find(avoid.begin(), avoid.end(), text::to_lower(label)) != avoid.end()) {
    label.insert(0, "_");
  }
  return label;
}

GenerationResult copy_baseline_generate(const InputSequence& input, std::uint64_t seed,
                                        TemplateFormat format) {
  const DecodedInput fields = decode_input(input.text, format);
  const auto avoid = input_tokens(input.text);

  std::array<std::string, kRoleCount> labels;
  for (NodeRole role : kAllRoles) labels[index_of(role)] = placeholder_label(role, avoid);
  labels[index_of(NodeRole::situation)] = fields.situation;
  labels[index_of(NodeRole::hypothesis_plus)] = fields.more_hypothesis;
  labels[index_of(NodeRole::hypothesis_minus)] = fields.less_hypothesis;

  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(fnv1a(input.text)),
                    static_cast<std::uint32_t>(fnv1a(input.text) >> 32)};
  std::mt19937_64 rng(seq);
  const std::size_t structure = static_cast<std::size_t>(rng() & 1U);

  return validity_gate(serialize_dot(make_complete_graph(labels, structure)));
}

double token_overlap_f1(const std::vector<std::string>& a, const std::vector<std::string>& b) {
  if (a.empty() || b.empty()) return 0.0;
  std::map<std::string_view, std::size_t> counts;
  for (const auto& t : a) ++counts[t];
  std::size_t overlap = 0;
  for (const auto& t : b) {
    auto it = counts.find(t);
    if (it != counts.end() && it->second > 0) {
      --it->second;
      ++overlap;
    }
  }
  if (overlap == 0) return 0.0;
  return 2.0 * static_cast<double>(overlap) / static_cast<double>(a.size() + b.size());
}

RetrievalBaseline::RetrievalBaseline(std::vector<SeqPair> corpus, TemplateFormat format)
    : corpus_(std::move(corpus)), format_(format) {
  if (corpus_.empty()) throw EmptyCorpusError("retrieval baseline needs a non-empty corpus");
  tokens_.reserve(corpus_.size());
  graphs_.reserve(corpus_.size());
  for (std::size_t i = 0; i < corpus_.size(); ++i) {
    tokens_.push_back(input_tokens(corpus_[i].input.text));
    try {
      graphs_.push_back(parse_dot(corpus_[i].output));
    } catch (const Error& e) {
      throw InvalidGraphError("corpus pair " + std::to_string(i + 1) + ": " + e.what());
    }
  }
}

std::size_t RetrievalBaseline::select(const InputSequence& input) const {
  const auto query = input_tokens(input.text);
  std::size_t best = 0;
  double best_f1 = -1.0;
  for (std::size_t i = 0; i < tokens_.size(); ++i) {
    const double f1 = token_overlap_f1(query, tokens_[i]);
    if (f1 > best_f1) {
      best_f1 = f1;
      best = i;
    }
  }
  return best;
}

GenerationResult RetrievalBaseline::generate(const InputSequence& input) const {
  const DecodedInput fields = decode_input(input.text, format_);
  InfluenceGraph g = graphs_[select(input)];
  g.set_label(NodeRole::situation, fields.situation);
  g.set_label(NodeRole::hypothesis_plus, fields.more_hypothesis);
  g.set_label(NodeRole::hypothesis_minus, fields.less_hypothesis);
  return validity_gate(serialize_dot(g));
}

RemoteGenerator::RemoteGenerator(RemoteConfig config) : config_(std::move(config)) {
  const std::string& url = config_.endpoint;
  const auto scheme_end = url.find("://");
  if (scheme_end == std::string::npos || url.substr(0, scheme_end) != "http") {
    throw Error("remote endpoint must be an http:// URL: " + url);
  }
  const auto path_start = url.find('/', scheme_end + 3);
  base_ = url.substr(0, path_start);
  path_ = path_start == std::string::npos ? "/" : url.substr(path_start);
  if (base_.size() <= scheme_end + 3) throw Error("remote endpoint has no host: " + url);
}

GenerationResult RemoteGenerator::generate(const InputSequence& input) const {
  auto fail = [](GenerationErrorKind kind, std::string detail) {
    GenerationResult r;
    r.error = GenerationError{kind, std::move(detail)};
    return r;
  };

  httplib::Client client(base_);
  const auto secs = std::chrono::duration_cast<std::chrono::seconds>(config_.timeout);
  const auto usecs = std::chrono::duration_cast<std::chrono::microseconds>(config_.timeout - secs);
  client.set_connection_timeout(secs.count(), usecs.count());
  client.set_read_timeout(secs.count(), usecs.count());
  client.set_write_timeout(secs.count(), usecs.count());

  const nlohmann::json body = {{"input", input.text}, {"max_length", config_.max_length}};
  const auto started = std::chrono::steady_clock::now();
  auto res = client.Post(path_, body.dump(), "application/json");
  if (!res) {
    const auto err = res.error();
    const auto elapsed = std::chrono::steady_clock::now() - started;
    const bool timed_out = err == httplib::Error::ConnectionTimeout ||
                           ((err == httplib::Error::Read || err == httplib::Error::Write) &&
                            elapsed >= config_.timeout * 9 / 10);
    return fail(timed_out ? GenerationErrorKind::timeout : GenerationErrorKind::transport,
                httplib::to_string(err));
  }
  if (res->status != 200) {
    return fail(GenerationErrorKind::transport, "HTTP status " + std::to_string(res->status));
  }
  auto doc = nlohmann::json::parse(res->body, nullptr, false);
  if (doc.is_discarded() || !doc.is_object()) {
    return fail(GenerationErrorKind::response_schema, "response body is not a JSON object");
  }
  auto it = doc.find("output");
  if (it == doc.end() || !it->is_string()) {
    return fail(GenerationErrorKind::response_schema, "response has no string field 'output'");
  }
  GenerationResult result = validity_gate(it->get<std::string>());
  doc.erase("output");
  if (!doc.empty()) result.metadata = doc.dump();
  return result;
}

namespace {

GenerationResult guarded(const GeneratorBackend& backend, const InputSequence& input) {
  try {
    return backend.generate(input);
  } catch (const MalformedSequenceError& e) {
    GenerationResult r;
    r.error = GenerationError{GenerationErrorKind::malformed_input, e.what()};
    return r;
  } catch (const std::exception& e) {
    GenerationResult r;
    r.error = GenerationError{GenerationErrorKind::internal, e.what()};
    return r;
  }
}

}  // namespace

CorpusGeneration generate_corpus(const GeneratorBackend& backend,
                                 const std::vector<InputSequence>& inputs, std::size_t threads) {
  CorpusGeneration out;
  out.results.resize(inputs.size());
  const std::size_t workers =
      backend.concurrent() ? std::clamp<std::size_t>(threads, 1, std::max<std::size_t>(inputs.size(), 1)) : 1;

  if (workers <= 1) {
    for (std::size_t i = 0; i < inputs.size(); ++i) out.results[i] = guarded(backend, inputs[i]);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < inputs.size(); i = next++) {
          out.results[i] = guarded(backend, inputs[i]);
        }
      });
    }
  }

  if (!inputs.empty()) {
    const auto valid = std::count_if(out.results.begin(), out.results.end(),
                                     [](const auto& r) { return r.valid; });
    out.validity_rate = static_cast<double>(valid) / static_cast<double>(inputs.size());
  }
  return out;
}

}  // namespace infgraph
