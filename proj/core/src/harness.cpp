// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The infgraph Authors

#include "infgraph/harness.hpp"

#include <unistd.h>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <random>

#include "infgraph/json_io.hpp"

namespace infgraph {

std::vector<Session> assign_judges(const std::vector<std::string>& query_ids,
                                   const std::vector<std::string>& judge_ids, std::uint64_t seed) {
  const std::set<std::string> distinct(judge_ids.begin(), judge_ids.end());
  if (distinct.size() < 3) {
    throw TooFewJudgesError("need at least 3 distinct judges, got " + std::to_string(distinct.size()));
  }
  if (distinct.size() != judge_ids.size()) throw TooFewJudgesError("judge ids must be unique");

  std::vector<std::string> order = judge_ids;
  std::mt19937_64 rng(seed);
  std::shuffle(order.begin(), order.end(), rng);

  std::map<std::string, Session> by_judge;
  for (const auto& judge : order) {
    by_judge[judge] = Session{session_id_for(judge, seed), judge, {}, 0, 0};
  }
  // Consecutive slots of a cyclic judge sequence are distinct when there
  // are at least three judges, and cyclic filling balances the loads.
  std::size_t slot = 0;
  for (const auto& qid : query_ids) {
    for (int copy = 0; copy < 3; ++copy, ++slot) {
      by_judge[order[slot % order.size()]].assignment.push_back(qid);
    }
  }

  std::vector<Session> out;
  out.reserve(order.size());
  for (const auto& judge : judge_ids) out.push_back(std::move(by_judge[judge]));
  return out;
}

std::string session_id_for(const std::string& judge_id, std::uint64_t seed) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  auto mix = [&h](unsigned char c) {
    h ^= c;
    h *= 0x100000001b3ULL;
  };
  for (int i = 0; i < 8; ++i) mix(static_cast<unsigned char>(seed >> (8 * i)));
  for (unsigned char c : judge_id) mix(c);
  char buf[24];
  std::snprintf(buf, sizeof buf, "s-%016llx", static_cast<unsigned long long>(h));
  return buf;
}

JudgmentLog::JudgmentLog(std::filesystem::path path) : path_(std::move(path)) {
  bool needs_newline = false;
  if (std::filesystem::exists(path_) && std::filesystem::file_size(path_) > 0) {
    if (std::FILE* f = std::fopen(path_.c_str(), "rb")) {
      std::fseek(f, -1, SEEK_END);
      needs_newline = std::fgetc(f) != '\n';
      std::fclose(f);
    }
  }
  file_ = std::fopen(path_.c_str(), "ab");
  if (!file_) throw IoError("cannot open judgment log " + path_.string());
  if (needs_newline) {
    std::fputc('\n', file_);
    std::fflush(file_);
  }
}

JudgmentLog::~JudgmentLog() {
  if (file_) std::fclose(file_);
}

void JudgmentLog::append(const JudgmentRecord& record) {
  const std::string line = to_json(record).dump() + "\n";
  if (std::fwrite(line.data(), 1, line.size(), file_) != line.size() || std::fflush(file_) != 0 ||
      ::fsync(::fileno(file_)) != 0) {
    throw IoError("failed to append to judgment log " + path_.string());
  }
}

std::vector<JudgmentRecord> JudgmentLog::replay(std::size_t* skipped) const {
  return read_judgments(path_, skipped);
}

nlohmann::json to_json(const ItemView& v) {
  return {{"index", v.index},
          {"total", v.total},
          {"query_id", v.query_id},
          {"premise", v.premise},
          {"hypothesis", v.hypothesis},
          {"update", v.update},
          {"chain", to_json(v.chain)}};
}

nlohmann::json to_json(const NextItem& n) {
  if (n.done) return {{"done", true}, {"index", n.answered}, {"total", n.total}};
  nlohmann::json j = to_json(n.item);
  j["done"] = false;
  return j;
}

namespace {

std::int64_t wall_clock_ms() {
  return std::chrono::duration_cast<std::chrono::milliseconds>(
             std::chrono::system_clock::now().time_since_epoch())
      .count();
}

std::size_t first_unanswered(const Session& s, const std::set<std::string>& answered) {
  std::size_t i = 0;
  while (i < s.assignment.size() && answered.contains(s.assignment[i])) ++i;
  return i;
}

}  // namespace

AnnotationService::AnnotationService(std::vector<PoolItem> pool, std::vector<std::string> judges,
                                     std::uint64_t seed, std::filesystem::path log_path, Clock clock)
    : pool_(std::move(pool)),
      seed_(seed),
      clock_(clock ? std::move(clock) : Clock(wall_clock_ms)),
      log_(std::move(log_path)) {
  std::vector<std::string> ids;
  ids.reserve(pool_.size());
  for (std::size_t i = 0; i < pool_.size(); ++i) {
    if (!pool_index_.emplace(pool_[i].query.id, i).second) {
      throw FormatError("duplicate query id in pool: " + pool_[i].query.id);
    }
    ids.push_back(pool_[i].query.id);
  }
  for (auto& s : assign_judges(ids, judges, seed_)) {
    session_of_judge_[s.judge_id] = s.session_id;
    sessions_[s.session_id] = std::move(s);
  }

  records_ = log_.replay();
  for (const auto& r : records_) answered_[r.judge_id].insert(r.query_id);
  for (auto& [id, s] : sessions_) s.cursor = first_unanswered(s, answered_[s.judge_id]);
  refresh_stats_locked();
}

std::string AnnotationService::open_session(const std::string& judge_id) {
  std::lock_guard lock(mu_);
  auto it = session_of_judge_.find(judge_id);
  if (it == session_of_judge_.end()) throw UnknownJudgeError("unknown judge '" + judge_id + "'");
  auto& s = sessions_.at(it->second);
  if (s.created_ms == 0) s.created_ms = clock_();
  return s.session_id;
}

NextItem AnnotationService::next_item(const std::string& session_id) const {
  std::lock_guard lock(mu_);
  auto it = sessions_.find(session_id);
  if (it == sessions_.end()) throw UnknownSessionError("unknown session '" + session_id + "'");
  const Session& s = it->second;
  NextItem next;
  next.total = s.assignment.size();
  next.answered = s.cursor;
  if (s.cursor >= s.assignment.size()) {
    next.done = true;
    return next;
  }
  const PoolItem& item = pool_[pool_index_.at(s.assignment[s.cursor])];
  next.item = ItemView{s.cursor + 1,          s.assignment.size(), item.query.id,
                       item.query.premise,    item.query.hypothesis, item.query.update,
                       item.chain};
  return next;
}

std::size_t AnnotationService::submit(const std::string& session_id, const Submission& submission) {
  std::lock_guard lock(mu_);
  auto it = sessions_.find(session_id);
  if (it == sessions_.end()) throw UnknownSessionError("unknown session '" + session_id + "'");
  Session& s = it->second;

  JudgmentRecord record{submission.query_id, s.judge_id,         submission.answer,
                        submission.helpfulness, submission.aspects, clock_()};
  if (auto v = record_violations(record); !v.empty()) {
    std::string detail;
    for (const auto& msg : v) detail += (detail.empty() ? "" : "; ") + msg;
    throw InvariantViolationError(detail);
  }
  auto& done = answered_[s.judge_id];
  if (done.contains(record.query_id)) {
    throw DuplicateSubmissionError("query " + record.query_id + " already answered by " + s.judge_id);
  }
  if (s.cursor >= s.assignment.size()) {
    throw OutOfOrderError("session " + session_id + " has no items left");
  }
  if (s.assignment[s.cursor] != record.query_id) {
    throw OutOfOrderError("expected an answer for " + s.assignment[s.cursor] + ", got " + record.query_id);
  }

  log_.append(record);
  done.insert(record.query_id);
  records_.push_back(std::move(record));
  s.cursor = first_unanswered(s, done);
  refresh_stats_locked();
  return s.cursor;
}

void AnnotationService::refresh_stats_locked() {
  auto snapshot = std::make_shared<const nlohmann::json>(to_json(summarize(pool_, records_)));
  std::atomic_store(&stats_, std::move(snapshot));
}

std::shared_ptr<const nlohmann::json> AnnotationService::stats() const {
  return std::atomic_load(&stats_);
}

std::vector<JudgmentRecord> AnnotationService::records() const {
  std::lock_guard lock(mu_);
  return records_;
}

std::vector<Session> AnnotationService::sessions() const {
  std::lock_guard lock(mu_);
  std::vector<Session> out;
  for (const auto& [id, s] : sessions_) out.push_back(s);
  return out;
}

}  // namespace infgraph
