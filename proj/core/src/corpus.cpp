// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The infgraph Authors

#include "infgraph/corpus.hpp"

#include <fstream>
#include <istream>
#include <nlohmann/json.hpp>
#include <ostream>

#include "infgraph/dot.hpp"
#include "infgraph/text.hpp"

namespace infgraph {

using nlohmann::json;

std::string_view to_string(Dataset d) noexcept {
  switch (d) {
    case Dataset::wiqa: return "wiqa";
    case Dataset::atomic: return "atomic";
    case Dataset::social: return "social";
    case Dataset::snli: return "snli";
  }
  return "unknown";
}

std::string_view to_string(Split s) noexcept {
  switch (s) {
    case Split::train: return "train";
    case Split::dev: return "dev";
    case Split::test: return "test";
  }
  return "unknown";
}

std::optional<Dataset> dataset_from_string(std::string_view s) noexcept {
  for (Dataset d : {Dataset::wiqa, Dataset::atomic, Dataset::social, Dataset::snli}) {
    if (to_string(d) == s) return d;
  }
  return std::nullopt;
}

std::optional<Split> split_from_string(std::string_view s) noexcept {
  for (Split sp : {Split::train, Split::dev, Split::test}) {
    if (to_string(sp) == s) return sp;
  }
  return std::nullopt;
}

namespace {

/// Thrown inside record handling; becomes an InvalidRecord entry.
struct RecordRejected {
  std::string reason;
};

std::string require_string(const json& rec, const char* field) {
  auto it = rec.find(field);
  if (it == rec.end() || it->is_null()) throw RecordRejected{"missing-field(" + std::string(field) + ")"};
  if (!it->is_string()) throw RecordRejected{"wrong-type(" + std::string(field) + ")"};
  std::string v = it->get<std::string>();
  if (text::trim(v).empty()) throw RecordRejected{"empty-field(" + std::string(field) + ")"};
  return v;
}

/// Streams a record file: validates the header, then hands each parsed
/// record object to `on_record`. Handles blank lines and JSON errors.
template <typename OnRecord>
CorpusStats read_records(std::istream& in, std::string_view schema, OnRecord&& on_record) {
  CorpusStats stats;
  std::string line;
  std::size_t lineno = 0;
  bool header_seen = false;
  while (std::getline(in, line)) {
    ++lineno;
    if (text::trim(line).empty()) continue;
    if (!header_seen) {
      json header = json::parse(line, nullptr, false);
      if (header.is_discarded() || !header.is_object() || !header.contains("schema")) {
        throw SchemaVersionError("line " + std::to_string(lineno) + ": missing record-file header");
      }
      if (header.value("schema", "") != schema || header.value("version", -1) != kRecordVersion) {
        throw SchemaVersionError("expected schema " + std::string(schema) + " version " +
                                 std::to_string(kRecordVersion) + ", got " + header.dump());
      }
      header_seen = true;
      continue;
    }
    ++stats.total;
    json rec = json::parse(line, nullptr, false);
    std::string id;
    try {
      if (rec.is_discarded() || !rec.is_object()) throw RecordRejected{"malformed-json"};
      if (auto it = rec.find("id"); it != rec.end() && it->is_string()) id = it->get<std::string>();
      on_record(rec);
      ++stats.valid;
    } catch (const RecordRejected& r) {
      ++stats.invalid;
      stats.invalid_records.push_back({lineno, id, r.reason});
    }
  }
  if (in.bad()) throw IoError("read failure");
  return stats;
}

std::ifstream open_for_read(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read " + path.string());
  return in;
}

}  // namespace

WiqaCorpus ingest_wiqa(std::istream& in) {
  WiqaCorpus corpus;
  std::size_t parsed_graphs = 0;
  std::size_t token_sum = 0;
  corpus.stats = read_records(in, kWiqaSchema, [&](const json& rec) {
    WiqaExample ex;
    ex.id = require_string(rec, "id");
    ex.passage = require_string(rec, "passage");
    const std::string dot = require_string(rec, "graph_dot");
    try {
      ex.graph = parse_dot(dot);
    } catch (const Error& e) {
      throw RecordRejected{std::string("invalid-dot: ") + e.what()};
    }
    const auto report = validate_schema(ex.graph);
    if (!report.valid()) {
      const auto& v = report.violations.front();
      throw RecordRejected{"invalid-graph: " + std::string(to_string(v.kind)) + " " + v.detail};
    }
    ++parsed_graphs;
    token_sum += text::split_whitespace(ex.passage).size();
    corpus.examples.push_back(std::move(ex));
  });
  if (corpus.stats.valid > 0) {
    corpus.stats.mean_passage_tokens =
        static_cast<double>(token_sum) / static_cast<double>(corpus.stats.valid);
  }
  if (corpus.stats.total > 0) {
    corpus.stats.graph_validity_rate =
        static_cast<double>(parsed_graphs) / static_cast<double>(corpus.stats.total);
  }
  return corpus;
}

WiqaCorpus ingest_wiqa(const std::filesystem::path& path) {
  auto in = open_for_read(path);
  return ingest_wiqa(in);
}

DefeasibleCorpus ingest_defeasible(std::istream& in) {
  DefeasibleCorpus corpus;
  std::size_t token_sum = 0;
  corpus.stats = read_records(in, kDefeasibleSchema, [&](const json& rec) {
    DefeasibleQuery q;
    q.id = require_string(rec, "id");
    q.premise = require_string(rec, "premise");
    q.hypothesis = require_string(rec, "hypothesis");
    q.update = require_string(rec, "update");
    const std::string label = require_string(rec, "label");
    const std::string source = require_string(rec, "source");
    auto l = label_from_string(label);
    if (!l) throw RecordRejected{"invalid-label(" + label + ")"};
    auto s = source_from_string(source);
    if (!s) throw RecordRejected{"invalid-source(" + source + ")"};
    q.gold_label = *l;
    q.source = *s;
    token_sum += text::split_whitespace(q.premise).size();
    corpus.queries.push_back(std::move(q));
  });
  if (corpus.stats.valid > 0) {
    corpus.stats.mean_passage_tokens =
        static_cast<double>(token_sum) / static_cast<double>(corpus.stats.valid);
  }
  return corpus;
}

DefeasibleCorpus ingest_defeasible(const std::filesystem::path& path) {
  auto in = open_for_read(path);
  return ingest_defeasible(in);
}

std::vector<SeqPair> build_parallel_corpus(const std::vector<WiqaExample>& examples,
                                           TemplateFormat format) {
  std::vector<SeqPair> pairs;
  pairs.reserve(examples.size());
  for (const auto& ex : examples) {
    try {
      pairs.push_back(encode_wiqa(ex, format));
    } catch (const Error& e) {
      throw ExampleError(ex.id, e.what());
    }
  }
  return pairs;
}

void write_parallel_corpus(const std::vector<SeqPair>& pairs, std::ostream& out) {
  for (const auto& p : pairs) out << p.input.text << '\t' << p.output << '\n';
}

std::vector<SeqPair> read_parallel_corpus(std::istream& in) {
  std::vector<SeqPair> pairs;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (text::trim(line).empty()) continue;
    const auto tab = line.find('\t');
    if (tab == std::string::npos || line.find('\t', tab + 1) != std::string::npos) {
      throw IoError("parallel corpus line " + std::to_string(lineno) + ": expected exactly one TAB");
    }
    pairs.push_back({{line.substr(0, tab)}, line.substr(tab + 1)});
  }
  return pairs;
}

std::optional<std::size_t> SplitManifest::expected(Dataset d, Split s) const noexcept {
  for (const auto& e : entries) {
    if (e.dataset == d && e.split == s) return e.count;
  }
  return std::nullopt;
}

std::size_t SplitManifest::total(Dataset d) const noexcept {
  std::size_t sum = 0;
  for (const auto& e : entries) {
    if (e.dataset == d) sum += e.count;
  }
  return sum;
}

SplitManifest published_manifest() {
  return {{
      {Dataset::wiqa, Split::train, 1522},
      {Dataset::wiqa, Split::test, 189},
      {Dataset::wiqa, Split::dev, 152},
      {Dataset::atomic, Split::train, 35001},
      {Dataset::atomic, Split::test, 4137},
      {Dataset::atomic, Split::dev, 3839},
      {Dataset::social, Split::train, 88675},
      {Dataset::social, Split::test, 1836},
      {Dataset::social, Split::dev, 1784},
      {Dataset::snli, Split::train, 77015},
      {Dataset::snli, Split::test, 9438},
      {Dataset::snli, Split::dev, 9342},
  }};
}

SplitManifest load_manifest(const std::filesystem::path& path) {
  auto in = open_for_read(path);
  json doc = json::parse(in, nullptr, false);
  if (doc.is_discarded() || !doc.contains("entries") || !doc["entries"].is_array()) {
    throw IoError(path.string() + ": not a manifest document");
  }
  SplitManifest m;
  for (const auto& e : doc["entries"]) {
    auto d = dataset_from_string(e.value("dataset", ""));
    auto s = split_from_string(e.value("split", ""));
    if (!d || !s || !e.contains("count") || !e["count"].is_number_unsigned()) {
      throw IoError(path.string() + ": bad manifest entry " + e.dump());
    }
    m.entries.push_back({*d, *s, e["count"].get<std::size_t>()});
  }
  return m;
}

std::optional<std::string> check_manifest(const SplitManifest& m, Dataset d, Split s,
                                          std::size_t count) {
  auto want = m.expected(d, s);
  const std::string key = std::string(to_string(d)) + "/" + std::string(to_string(s));
  if (!want) return "manifest has no entry for " + key;
  if (*want != count) {
    return key + ": expected " + std::to_string(*want) + " records, found " + std::to_string(count);
  }
  return std::nullopt;
}

}  // namespace infgraph
