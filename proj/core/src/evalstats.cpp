// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The infgraph Authors

#include "infgraph/evalstats.hpp"

#include <algorithm>
#include <boost/math/distributions/binomial.hpp>
#include <boost/math/distributions/chi_squared.hpp>
#include <boost/math/distributions/normal.hpp>
#include <cmath>
#include <random>
#include <set>

namespace infgraph {

std::string_view to_string(Helpfulness h) noexcept {
  switch (h) {
    case Helpfulness::helpful: return "helpful";
    case Helpfulness::relevant_not_helpful: return "relevant_not_helpful";
    case Helpfulness::irrelevant_misleading: return "irrelevant_misleading";
  }
  return "unknown";
}

std::string_view to_string(Aspect a) noexcept {
  switch (a) {
    case Aspect::mediator: return "mediator";
    case Aspect::extraneous: return "extraneous";
    case Aspect::structure: return "structure";
    case Aspect::none: return "none";
  }
  return "unknown";
}

std::optional<Helpfulness> helpfulness_from_string(std::string_view s) noexcept {
  for (Helpfulness h : kAllHelpfulness) {
    if (to_string(h) == s) return h;
  }
  return std::nullopt;
}

std::optional<Aspect> aspect_from_string(std::string_view s) noexcept {
  for (Aspect a : kAllAspects) {
    if (to_string(a) == s) return a;
  }
  return std::nullopt;
}

std::vector<std::string> record_violations(const JudgmentRecord& r) {
  std::vector<std::string> out;
  if (r.query_id.empty()) out.emplace_back("query_id is empty");
  if (r.judge_id.empty()) out.emplace_back("judge_id is empty");
  const bool has_none = std::find(r.aspects.begin(), r.aspects.end(), Aspect::none) != r.aspects.end();
  if (has_none && r.aspects.size() > 1) out.emplace_back("aspect 'none' cannot be combined with other aspects");
  std::set<Aspect> unique(r.aspects.begin(), r.aspects.end());
  if (unique.size() != r.aspects.size()) out.emplace_back("aspects contain duplicates");
  return out;
}

namespace {

void check_triple(std::span<const JudgmentRecord> records) {
  if (records.size() != 3) {
    throw ArityError("majority needs exactly 3 judgments, got " + std::to_string(records.size()));
  }
  for (const auto& r : records) {
    if (r.query_id != records.front().query_id) {
      throw ArityError("judgments for different queries: " + records.front().query_id + ", " +
                       r.query_id);
    }
  }
}

template <typename T, typename Get>
std::optional<T> two_of_three(std::span<const JudgmentRecord> records, Get get) {
  check_triple(records);
  const T a = get(records[0]);
  const T b = get(records[1]);
  const T c = get(records[2]);
  if (a == b || a == c) return a;
  if (b == c) return b;
  return std::nullopt;
}

}  // namespace

Label majority_answer(std::span<const JudgmentRecord> records) {
  // Binary answers from three judges always have a majority.
  return *two_of_three<Label>(records, [](const auto& r) { return r.answer; });
}

std::optional<Helpfulness> majority_helpfulness(std::span<const JudgmentRecord> records) {
  return two_of_three<Helpfulness>(records, [](const auto& r) { return r.helpfulness; });
}

std::map<std::string, std::vector<JudgmentRecord>> group_by_query(
    std::span<const JudgmentRecord> records) {
  std::map<std::string, std::vector<JudgmentRecord>> groups;
  for (const auto& r : records) groups[r.query_id].push_back(r);
  return groups;
}

double majority_agreement(std::span<const JudgmentRecord> records) {
  const auto groups = group_by_query(records);
  if (groups.empty()) throw DomainError("majority agreement of an empty record set");
  std::size_t agreed = 0;
  for (const auto& [id, recs] : groups) {
    if (recs.size() != 3) {
      throw ArityError("query " + id + " has " + std::to_string(recs.size()) + " judgments, expected 3");
    }
    if (majority_helpfulness(recs)) ++agreed;
  }
  return static_cast<double>(agreed) / static_cast<double>(groups.size());
}

WilsonInterval wilson_interval(std::size_t k, std::size_t n, double confidence) {
  if (n == 0 || k > n || !(confidence > 0.0 && confidence < 1.0)) {
    throw DomainError("wilson_interval needs 0 <= k <= n, n > 0 and confidence in (0,1)");
  }
  const boost::math::normal standard;
  const double z = boost::math::quantile(standard, 1.0 - (1.0 - confidence) / 2.0);
  const double nn = static_cast<double>(n);
  const double p = static_cast<double>(k) / nn;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / nn;
  const double center = (p + z2 / (2.0 * nn)) / denom;
  const double half = z / denom * std::sqrt(p * (1.0 - p) / nn + z2 / (4.0 * nn * nn));
  return {std::max(0.0, center - half), std::min(1.0, center + half)};
}

Accuracy make_accuracy(std::size_t correct, std::size_t total, double confidence) {
  Accuracy a;
  a.correct = correct;
  a.total = total;
  if (total > 0) {
    a.value = static_cast<double>(correct) / static_cast<double>(total);
    a.interval = wilson_interval(correct, total, confidence);
  }
  return a;
}

AccuracyReport accuracy_report(std::span<const PoolItem> pool,
                               const std::map<std::string, Label>& majorities) {
  std::vector<std::string> missing;
  std::size_t correct = 0;
  std::map<Source, std::pair<std::size_t, std::size_t>> per_source;
  for (const auto& item : pool) {
    auto it = majorities.find(item.query.id);
    if (it == majorities.end()) {
      missing.push_back(item.query.id);
      continue;
    }
    const bool right = it->second == item.query.gold_label;
    correct += right ? 1 : 0;
    auto& [k, n] = per_source[item.query.source];
    k += right ? 1 : 0;
    ++n;
  }
  if (!missing.empty()) {
    std::string ids;
    for (const auto& id : missing) ids += (ids.empty() ? "" : ", ") + id;
    throw MissingMajorityError("no majority answer for: " + ids);
  }
  AccuracyReport report;
  report.overall = make_accuracy(correct, pool.size());
  for (const auto& [src, kn] : per_source) report.by_source[src] = make_accuracy(kn.first, kn.second);
  return report;
}

McNemarResult mcnemar(std::size_t b, std::size_t c, McNemarMethod method) {
  if (b + c == 0) throw DegenerateTestError("McNemar's test needs at least one discordant pair");
  McNemarResult r;
  r.method = method;
  const double diff = std::fabs(static_cast<double>(b) - static_cast<double>(c)) - 1.0;
  const double corrected = std::max(diff, 0.0);
  r.statistic = corrected * corrected / static_cast<double>(b + c);
  if (method == McNemarMethod::chi_square_corrected) {
    const boost::math::chi_squared chi2(1.0);
    r.p_value = boost::math::cdf(boost::math::complement(chi2, r.statistic));
  } else {
    const boost::math::binomial bin(static_cast<double>(b + c), 0.5);
    const double tail = boost::math::cdf(bin, static_cast<double>(std::min(b, c)));
    r.p_value = std::min(1.0, 2.0 * tail);
  }
  return r;
}

std::array<double, 4> HelpfulnessTally::percentages() const noexcept {
  std::array<double, 4> out{};
  if (queries == 0) return out;
  const double n = static_cast<double>(queries);
  out[0] = 100.0 * static_cast<double>(helpful) / n;
  out[1] = 100.0 * static_cast<double>(relevant_not_helpful) / n;
  out[2] = 100.0 * static_cast<double>(irrelevant_misleading) / n;
  out[3] = 100.0 * static_cast<double>(no_majority) / n;
  return out;
}

HelpfulnessTally tally_helpfulness(std::span<const JudgmentRecord> records) {
  HelpfulnessTally t;
  for (const auto& [id, recs] : group_by_query(records)) {
    if (recs.size() != 3) {
      throw ArityError("query " + id + " has " + std::to_string(recs.size()) + " judgments, expected 3");
    }
    ++t.queries;
    auto m = majority_helpfulness(recs);
    if (!m) {
      ++t.no_majority;
    } else if (*m == Helpfulness::helpful) {
      ++t.helpful;
    } else if (*m == Helpfulness::relevant_not_helpful) {
      ++t.relevant_not_helpful;
    } else {
      ++t.irrelevant_misleading;
    }
  }
  return t;
}

namespace {

std::array<double, 4> as_percentages(const std::array<std::size_t, 4>& counts) {
  std::size_t total = 0;
  for (auto c : counts) total += c;
  std::array<double, 4> out{};
  if (total == 0) return out;
  for (std::size_t i = 0; i < counts.size(); ++i) {
    out[i] = 100.0 * static_cast<double>(counts[i]) / static_cast<double>(total);
  }
  return out;
}

std::size_t sum(const std::array<std::size_t, 4>& counts) {
  std::size_t total = 0;
  for (auto c : counts) total += c;
  return total;
}

}  // namespace

std::size_t AspectTally::useful_selections() const noexcept { return sum(useful_counts); }
std::size_t AspectTally::all_selections() const noexcept { return sum(all_counts); }
std::array<double, 4> AspectTally::useful_percentages() const noexcept { return as_percentages(useful_counts); }
std::array<double, 4> AspectTally::all_percentages() const noexcept { return as_percentages(all_counts); }

AspectTally tally_aspects(std::span<const JudgmentRecord> records) {
  AspectTally t;
  for (const auto& r : records) {
    ++t.judgments;
    const bool useful = r.helpfulness == Helpfulness::helpful;
    if (useful) ++t.useful_judgments;
    for (Aspect a : r.aspects) {
      const auto i = static_cast<std::size_t>(a);
      ++t.all_counts[i];
      if (useful) ++t.useful_counts[i];
    }
  }
  return t;
}

double FlipMatrix::before_accuracy() const noexcept {
  return total() == 0 ? 0.0 : static_cast<double>(right_right + right_wrong) / static_cast<double>(total());
}

double FlipMatrix::after_accuracy() const noexcept {
  return total() == 0 ? 0.0 : static_cast<double>(right_right + wrong_right) / static_cast<double>(total());
}

FlipMatrix flip_matrix(const std::map<std::string, bool>& before,
                       const std::map<std::string, bool>& after) {
  if (before.size() != after.size()) {
    throw IdMismatchError("before has " + std::to_string(before.size()) + " ids, after has " +
                          std::to_string(after.size()));
  }
  FlipMatrix m;
  for (const auto& [id, was_right] : before) {
    auto it = after.find(id);
    if (it == after.end()) throw IdMismatchError("id " + id + " missing from the after set");
    const bool is_right = it->second;
    if (was_right && is_right) ++m.right_right;
    else if (was_right) ++m.right_wrong;
    else if (is_right) ++m.wrong_right;
    else ++m.wrong_wrong;
  }
  return m;
}

std::vector<PoolItem> build_eval_pool(const std::vector<PoolCandidate>& correct_pool,
                                      const std::vector<PoolCandidate>& wrong_pool, std::size_t k,
                                      std::uint64_t seed) {
  if (correct_pool.size() < k || wrong_pool.size() < k) {
    throw InsufficientPoolError("need " + std::to_string(k) + " items per pool, have " +
                                std::to_string(correct_pool.size()) + " correct and " +
                                std::to_string(wrong_pool.size()) + " wrong");
  }
  std::mt19937_64 rng(seed);
  auto take = [&](const std::vector<PoolCandidate>& from, bool prior_correct,
                  std::vector<PoolItem>& into) {
    std::vector<std::size_t> idx(from.size());
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    std::shuffle(idx.begin(), idx.end(), rng);
    for (std::size_t i = 0; i < k; ++i) {
      into.push_back({from[idx[i]].query, from[idx[i]].chain, prior_correct});
    }
  };
  std::vector<PoolItem> pool;
  pool.reserve(2 * k);
  take(correct_pool, true, pool);
  take(wrong_pool, false, pool);
  std::shuffle(pool.begin(), pool.end(), rng);
  return pool;
}

EvalSummary summarize(std::span<const PoolItem> pool, std::span<const JudgmentRecord> records) {
  EvalSummary s;
  s.pool_size = pool.size();
  s.judgments = records.size();

  std::map<std::string, const PoolItem*> by_id;
  for (const auto& item : pool) by_id[item.query.id] = &item;

  std::vector<JudgmentRecord> complete_records;
  std::vector<PoolItem> complete_items;
  std::map<std::string, Label> majorities;
  std::map<std::string, bool> before;
  std::map<std::string, bool> after;
  for (const auto& [id, recs] : group_by_query(records)) {
    auto it = by_id.find(id);
    if (it == by_id.end()) {
      s.unmatched_records += recs.size();
      continue;
    }
    if (recs.size() > 3) {
      throw ArityError("query " + id + " has " + std::to_string(recs.size()) + " judgments");
    }
    if (recs.size() < 3) continue;
    ++s.queries_complete;
    complete_records.insert(complete_records.end(), recs.begin(), recs.end());
    complete_items.push_back(*it->second);
    const Label m = majority_answer(recs);
    majorities[id] = m;
    before[id] = it->second->prior_correct;
    after[id] = m == it->second->query.gold_label;
  }
  if (s.queries_complete == 0) return s;

  s.accuracy = accuracy_report(complete_items, majorities);
  s.helpfulness = tally_helpfulness(complete_records);
  s.majority_agreement = majority_agreement(complete_records);
  s.aspects = tally_aspects(complete_records);
  s.flips = flip_matrix(before, after);
  if (s.flips->wrong_right + s.flips->right_wrong > 0) {
    s.mcnemar = mcnemar(s.flips->wrong_right, s.flips->right_wrong);
  }
  return s;
}

}  // namespace infgraph
