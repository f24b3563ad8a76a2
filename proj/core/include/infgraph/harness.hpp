// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The infgraph Authors

#pragma once

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <nlohmann/json.hpp>
#include <set>
#include <string>
#include <vector>

#include "infgraph/evalstats.hpp"

namespace infgraph {

class UnknownSessionError : public Error {
 public:
  using Error::Error;
};
class UnknownJudgeError : public Error {
 public:
  using Error::Error;
};
class OutOfOrderError : public Error {
 public:
  using Error::Error;
};
class DuplicateSubmissionError : public Error {
 public:
  using Error::Error;
};

/// One judge's ordered work list.
struct Session {
  std::string session_id;
  std::string judge_id;
  std::vector<std::string> assignment;  // query ids
  std::size_t cursor = 0;
  std::int64_t created_ms = 0;
};

/// Gives every query to exactly three distinct judges with per-judge loads
/// within one item of each other. Judge order is shuffled by `seed`; query
/// order is kept. Throws TooFewJudgesError for fewer than three judges.
std::vector<Session> assign_judges(const std::vector<std::string>& query_ids,
                                   const std::vector<std::string>& judge_ids, std::uint64_t seed);

/// Stable session id for a judge under a seed.
std::string session_id_for(const std::string& judge_id, std::uint64_t seed);

/// Append-only judgment log, one JSON object per line. Each append is
/// flushed and fsync'ed before it returns. Existing bytes are never
/// rewritten; a torn final line from a crash is closed off with a newline
/// and skipped on replay.
class JudgmentLog {
 public:
  explicit JudgmentLog(std::filesystem::path path);
  ~JudgmentLog();
  JudgmentLog(const JudgmentLog&) = delete;
  JudgmentLog& operator=(const JudgmentLog&) = delete;

  void append(const JudgmentRecord& record);
  std::vector<JudgmentRecord> replay(std::size_t* skipped = nullptr) const;
  const std::filesystem::path& path() const noexcept { return path_; }

 private:
  std::filesystem::path path_;
  std::FILE* file_ = nullptr;
};

/// What a judge sees for one item. Never carries the gold label.
struct ItemView {
  std::size_t index = 0;  // 1-based
  std::size_t total = 0;
  std::string query_id;
  std::string premise;
  std::string hypothesis;
  std::string update;
  ChainGraph chain;
};

struct NextItem {
  bool done = false;
  std::size_t answered = 0;
  std::size_t total = 0;
  ItemView item;  // meaningful only when !done
};

/// Judge-supplied part of a JudgmentRecord.
struct Submission {
  std::string query_id;
  Label answer = Label::intensifies;
  Helpfulness helpfulness = Helpfulness::helpful;
  std::vector<Aspect> aspects;
};

nlohmann::json to_json(const ItemView& v);
nlohmann::json to_json(const NextItem& n);

/// Serves pool items to judges and records their answers.
///
/// Sessions are fixed at construction by assign_judges(); open_session()
/// hands out (or resumes) a judge's session. On start the log is replayed,
/// so a restarted service continues where it stopped. Submissions and the
/// log writer are serialized by one mutex; stats() reads an immutable
/// snapshot that is swapped after every accepted submission.
class AnnotationService {
 public:
  using Clock = std::function<std::int64_t()>;

  AnnotationService(std::vector<PoolItem> pool, std::vector<std::string> judges, std::uint64_t seed,
                    std::filesystem::path log_path, Clock clock = {});

  /// Throws UnknownJudgeError.
  std::string open_session(const std::string& judge_id);

  /// Idempotent until the next accepted submission. Throws UnknownSessionError.
  NextItem next_item(const std::string& session_id) const;

  /// Appends the record (server timestamp) and advances the cursor. Returns
  /// the new cursor. Throws UnknownSessionError, InvariantViolationError,
  /// DuplicateSubmissionError, OutOfOrderError.
  std::size_t submit(const std::string& session_id, const Submission& submission);

  /// Live summary, identical to to_json(summarize(pool, log records)).
  std::shared_ptr<const nlohmann::json> stats() const;

  std::vector<JudgmentRecord> records() const;
  const std::vector<PoolItem>& pool() const noexcept { return pool_; }
  std::vector<Session> sessions() const;

 private:
  void refresh_stats_locked();

  std::vector<PoolItem> pool_;
  std::map<std::string, std::size_t> pool_index_;
  std::uint64_t seed_;
  Clock clock_;

  mutable std::mutex mu_;
  std::map<std::string, Session> sessions_;                // by session id
  std::map<std::string, std::string> session_of_judge_;    // judge -> session id
  std::map<std::string, std::set<std::string>> answered_;  // judge -> query ids
  std::vector<JudgmentRecord> records_;
  JudgmentLog log_;

  std::shared_ptr<const nlohmann::json> stats_;
};

/// HTTP binding of AnnotationService:
///   POST /session              {"judge_id"}            -> {"session_id", ...}
///   GET  /session/{id}/next                             -> item payload or {"done": true}
///   POST /session/{id}/answer  {query_id, answer, helpfulness, aspects}
///   GET  /stats
/// Errors carry {"error", "detail"} with a conventional status code.
class HttpService {
 public:
  explicit HttpService(AnnotationService& service);
  ~HttpService();
  HttpService(const HttpService&) = delete;
  HttpService& operator=(const HttpService&) = delete;

  /// Serves files under `dir` at `/` (for a browser client).
  void mount_static(const std::filesystem::path& dir);

  /// Binds; port 0 picks a free port. Returns the bound port, or -1.
  int bind(const std::string& host, int port);
  /// Blocks until stop().
  bool listen();
  void stop();
  void wait_until_ready() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace infgraph
