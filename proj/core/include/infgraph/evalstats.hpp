// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The infgraph Authors

#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "infgraph/errors.hpp"
#include "infgraph/graph.hpp"
#include "infgraph/template.hpp"

namespace infgraph {

enum class Helpfulness { helpful, relevant_not_helpful, irrelevant_misleading };
enum class Aspect { mediator, extraneous, structure, none };

inline constexpr std::array<Helpfulness, 3> kAllHelpfulness = {
    Helpfulness::helpful, Helpfulness::relevant_not_helpful, Helpfulness::irrelevant_misleading};
inline constexpr std::array<Aspect, 4> kAllAspects = {Aspect::mediator, Aspect::extraneous,
                                                      Aspect::structure, Aspect::none};

std::string_view to_string(Helpfulness h) noexcept;
std::string_view to_string(Aspect a) noexcept;
std::optional<Helpfulness> helpfulness_from_string(std::string_view s) noexcept;
std::optional<Aspect> aspect_from_string(std::string_view s) noexcept;

/// One judge's answer for one pool item.
struct JudgmentRecord {
  std::string query_id;
  std::string judge_id;
  Label answer = Label::intensifies;
  Helpfulness helpfulness = Helpfulness::helpful;
  std::vector<Aspect> aspects;  // "none" excludes every other aspect
  std::int64_t timestamp_ms = 0;

  friend bool operator==(const JudgmentRecord&, const JudgmentRecord&) = default;
};

class InvariantViolationError : public Error {
 public:
  using Error::Error;
};

/// Empty when the record satisfies its invariants.
std::vector<std::string> record_violations(const JudgmentRecord& r);

struct PoolItem {
  DefeasibleQuery query;
  ChainGraph chain;
  bool prior_correct = false;  // was the no-graph majority right?
};

struct PoolCandidate {
  DefeasibleQuery query;
  ChainGraph chain;
};

/// 2-of-3 answer majority. Throws ArityError unless exactly three records
/// for one query are given.
Label majority_answer(std::span<const JudgmentRecord> records);

/// 2-of-3 helpfulness majority; nullopt for a three-way split.
std::optional<Helpfulness> majority_helpfulness(std::span<const JudgmentRecord> records);

/// Records grouped by query id (sorted by id).
std::map<std::string, std::vector<JudgmentRecord>> group_by_query(
    std::span<const JudgmentRecord> records);

/// Fraction of queries whose three helpfulness labels have a 2-of-3
/// majority. Throws ArityError when a query does not have three records,
/// DomainError when there are no records.
double majority_agreement(std::span<const JudgmentRecord> records);

struct WilsonInterval {
  double low = 0.0;
  double high = 0.0;
  double center() const noexcept { return (low + high) / 2.0; }
  double half_width() const noexcept { return (high - low) / 2.0; }
};

/// Wilson score interval for k successes in n trials at two-sided
/// `confidence`. Throws DomainError outside 0 <= k <= n, n > 0, 0 < confidence < 1.
WilsonInterval wilson_interval(std::size_t k, std::size_t n, double confidence = 0.95);

struct Accuracy {
  std::size_t correct = 0;
  std::size_t total = 0;
  double value = 0.0;
  WilsonInterval interval;
};

Accuracy make_accuracy(std::size_t correct, std::size_t total, double confidence = 0.95);

struct AccuracyReport {
  Accuracy overall;
  std::map<Source, Accuracy> by_source;
};

/// Accuracy of majority answers against gold labels, overall and per
/// source. Throws MissingMajorityError listing pool ids without a majority.
AccuracyReport accuracy_report(std::span<const PoolItem> pool,
                               const std::map<std::string, Label>& majorities);

enum class McNemarMethod { chi_square_corrected, exact_binomial };

struct McNemarResult {
  double statistic = 0.0;  // max(|b - c| - 1, 0)^2 / (b + c)
  double p_value = 1.0;
  McNemarMethod method = McNemarMethod::chi_square_corrected;
};

/// McNemar's test on discordant counts b (wrong->right) and c
/// (right->wrong). Throws DegenerateTestError when b + c == 0.
McNemarResult mcnemar(std::size_t b, std::size_t c,
                      McNemarMethod method = McNemarMethod::chi_square_corrected);

struct HelpfulnessTally {
  std::size_t queries = 0;
  std::size_t helpful = 0;
  std::size_t relevant_not_helpful = 0;
  std::size_t irrelevant_misleading = 0;
  std::size_t no_majority = 0;

  /// Percent of queries, in the order helpful, relevant_not_helpful,
  /// irrelevant_misleading, no_majority.
  std::array<double, 4> percentages() const noexcept;
};

/// Majority helpfulness per query. Throws ArityError.
HelpfulnessTally tally_helpfulness(std::span<const JudgmentRecord> records);

/// Aspect selections. Percentages are over selections, not judges, so each
/// set sums to 100. The primary denominator counts only judges who rated
/// the graph helpful; the secondary one counts every judge.
struct AspectTally {
  std::array<std::size_t, 4> useful_counts{};  // kAllAspects order
  std::array<std::size_t, 4> all_counts{};
  std::size_t useful_judgments = 0;
  std::size_t judgments = 0;

  std::size_t useful_selections() const noexcept;
  std::size_t all_selections() const noexcept;
  std::array<double, 4> useful_percentages() const noexcept;
  std::array<double, 4> all_percentages() const noexcept;
};

AspectTally tally_aspects(std::span<const JudgmentRecord> records);

struct FlipMatrix {
  std::size_t right_right = 0;
  std::size_t right_wrong = 0;
  std::size_t wrong_right = 0;
  std::size_t wrong_wrong = 0;

  std::size_t total() const noexcept { return right_right + right_wrong + wrong_right + wrong_wrong; }
  double before_accuracy() const noexcept;
  double after_accuracy() const noexcept;
};

/// Before/after correctness per query id. Throws IdMismatchError unless both
/// maps have the same ids.
FlipMatrix flip_matrix(const std::map<std::string, bool>& before,
                       const std::map<std::string, bool>& after);

/// k seeded samples from each pool, shuffled together. Items from
/// `correct_pool` are marked prior_correct. Throws InsufficientPoolError.
std::vector<PoolItem> build_eval_pool(const std::vector<PoolCandidate>& correct_pool,
                                      const std::vector<PoolCandidate>& wrong_pool, std::size_t k,
                                      std::uint64_t seed);

/// Everything the stats report carries. Aggregates cover only queries that
/// have all three judgments.
struct EvalSummary {
  std::size_t pool_size = 0;
  std::size_t judgments = 0;
  std::size_t queries_complete = 0;
  std::size_t unmatched_records = 0;  // records whose query id is not in the pool
  std::optional<AccuracyReport> accuracy;
  std::optional<HelpfulnessTally> helpfulness;
  std::optional<double> majority_agreement;
  std::optional<AspectTally> aspects;
  std::optional<FlipMatrix> flips;
  std::optional<McNemarResult> mcnemar;
};

EvalSummary summarize(std::span<const PoolItem> pool, std::span<const JudgmentRecord> records);

}  // namespace infgraph
