// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The infgraph Authors

#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "infgraph/errors.hpp"
#include "infgraph/template.hpp"

namespace infgraph {

enum class Dataset { wiqa, atomic, social, snli };
enum class Split { train, dev, test };

std::string_view to_string(Dataset d) noexcept;
std::string_view to_string(Split s) noexcept;
std::optional<Dataset> dataset_from_string(std::string_view s) noexcept;
std::optional<Split> split_from_string(std::string_view s) noexcept;

/// Record-file header values. The first non-blank line of every record file
/// is {"schema": "<kWiqaSchema|kDefeasibleSchema>", "version": kRecordVersion}.
inline constexpr std::string_view kWiqaSchema = "infgraph/wiqa";
inline constexpr std::string_view kDefeasibleSchema = "infgraph/defeasible";
inline constexpr int kRecordVersion = 1;

struct InvalidRecord {
  std::size_t line = 0;  // 1-based line number in the file
  std::string id;        // empty when the record had no readable id
  std::string reason;
};

struct CorpusStats {
  std::size_t total = 0;  // non-blank record lines, header excluded
  std::size_t valid = 0;
  std::size_t invalid = 0;
  std::vector<InvalidRecord> invalid_records;
  double mean_passage_tokens = 0.0;          // over valid records
  std::optional<double> graph_validity_rate;  // WIQA only; absent for empty files
};

struct WiqaCorpus {
  std::vector<WiqaExample> examples;
  CorpusStats stats;
};

struct DefeasibleCorpus {
  std::vector<DefeasibleQuery> queries;
  CorpusStats stats;
};

/// Record fields: id, passage, graph_dot. A record is valid when its graph
/// parses and passes validate_schema. Throws IoError, SchemaVersionError.
WiqaCorpus ingest_wiqa(const std::filesystem::path& path);
WiqaCorpus ingest_wiqa(std::istream& in);

/// Record fields: id, premise, hypothesis, update, label, source.
DefeasibleCorpus ingest_defeasible(const std::filesystem::path& path);
DefeasibleCorpus ingest_defeasible(std::istream& in);

class ExampleError : public Error {
 public:
  ExampleError(std::string id, const std::string& what)
      : Error("example " + id + ": " + what), id_(std::move(id)) {}
  const std::string& id() const noexcept { return id_; }

 private:
  std::string id_;
};

/// One SeqPair per example, same order. Throws ExampleError.
std::vector<SeqPair> build_parallel_corpus(const std::vector<WiqaExample>& examples,
                                           TemplateFormat format = TemplateFormat::situation);

/// `input<TAB>output` per line.
void write_parallel_corpus(const std::vector<SeqPair>& pairs, std::ostream& out);
std::vector<SeqPair> read_parallel_corpus(std::istream& in);

struct SplitCount {
  Dataset dataset;
  Split split;
  std::size_t count;
};

struct SplitManifest {
  std::vector<SplitCount> entries;

  std::optional<std::size_t> expected(Dataset d, Split s) const noexcept;
  /// Sum over the splits of one dataset.
  std::size_t total(Dataset d) const noexcept;
};

/// Published per-split sample counts for the four datasets.
SplitManifest published_manifest();

/// JSON: {"entries": [{"dataset": "wiqa", "split": "train", "count": 1522}, ...]}
SplitManifest load_manifest(const std::filesystem::path& path);

/// nullopt when `count` matches the manifest; otherwise a human-readable
/// mismatch (including a missing entry).
std::optional<std::string> check_manifest(const SplitManifest& m, Dataset d, Split s,
                                          std::size_t count);

}  // namespace infgraph
