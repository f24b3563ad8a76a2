// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The infgraph Authors

#pragma once

#include <filesystem>
#include <nlohmann/json.hpp>
#include <vector>

#include "infgraph/corpus.hpp"
#include "infgraph/evalstats.hpp"
#include "infgraph/generator.hpp"
#include "infgraph/metrics.hpp"

namespace infgraph {

/// A structured document is missing a field or has a bad value.
class FormatError : public Error {
 public:
  using Error::Error;
};

inline constexpr std::string_view kPoolSchema = "infgraph/pool";
inline constexpr std::string_view kCandidateSchema = "infgraph/candidates";

nlohmann::json to_json(const ChainGraph& c);
ChainGraph chain_from_json(const nlohmann::json& j);

nlohmann::json to_json(const DefeasibleQuery& q);
DefeasibleQuery query_from_json(const nlohmann::json& j);

nlohmann::json to_json(const PoolItem& item);
PoolItem pool_item_from_json(const nlohmann::json& j);

nlohmann::json to_json(const PoolCandidate& c);
PoolCandidate candidate_from_json(const nlohmann::json& j);

nlohmann::json to_json(const JudgmentRecord& r);
/// Throws FormatError on missing fields or unknown enum values; does not
/// check record invariants (see record_violations).
JudgmentRecord judgment_from_json(const nlohmann::json& j);

nlohmann::json to_json(const WilsonInterval& w);
nlohmann::json to_json(const Accuracy& a);
nlohmann::json to_json(const EvalSummary& s);
nlohmann::json to_json(const GraphMetricsReport& r);
nlohmann::json to_json(const ValidationReport& r);
nlohmann::json to_json(const CorpusStats& s);
nlohmann::json to_json(const GenerationResult& r);
nlohmann::json to_json(const RepairAction& a);

/// JSON Lines with a {"schema", "version"} header.
std::vector<PoolItem> read_pool(const std::filesystem::path& path);
void write_pool(const std::filesystem::path& path, const std::vector<PoolItem>& items);
std::vector<PoolCandidate> read_candidates(const std::filesystem::path& path);
void write_candidates(const std::filesystem::path& path, const std::vector<PoolCandidate>& items);

/// Judgment log lines (no header). Lines that do not parse are skipped and
/// counted in `skipped` when given.
std::vector<JudgmentRecord> read_judgments(const std::filesystem::path& path,
                                           std::size_t* skipped = nullptr);

}  // namespace infgraph
