// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The infgraph Authors

#include <gtest/gtest.h>
#include <httplib.h>

#include <fstream>
#include <thread>

#include "infgraph/harness.hpp"
#include "infgraph/json_io.hpp"
#include "support/synth.hpp"

using namespace infgraph;
using nlohmann::json;

namespace {

std::vector<std::string> ids(std::size_t n, const std::string& prefix = "q") {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(prefix + std::to_string(i));
  return out;
}

std::vector<PoolItem> small_pool(std::size_t n) {
  return build_eval_pool(synth::candidates(n, "c", 11), synth::candidates(n, "w", 12), n / 2, 3);
}

std::filesystem::path fresh_log(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / "infgraph_test_harness";
  std::filesystem::create_directories(dir);
  const auto p = dir / name;
  std::filesystem::remove(p);
  return p;
}

std::int64_t fixed_clock() { return 42; }

Submission answer_for(const std::string& qid) {
  return {qid, Label::intensifies, Helpfulness::helpful, {Aspect::mediator}};
}

void check_cover(const std::vector<Session>& sessions, std::size_t n_queries) {
  std::map<std::string, std::set<std::string>> judges_of;
  std::size_t lo = SIZE_MAX, hi = 0;
  for (const auto& s : sessions) {
    lo = std::min(lo, s.assignment.size());
    hi = std::max(hi, s.assignment.size());
    for (const auto& q : s.assignment) {
      EXPECT_TRUE(judges_of[q].insert(s.judge_id).second) << q << " twice for " << s.judge_id;
    }
  }
  EXPECT_EQ(judges_of.size(), n_queries);
  for (const auto& [q, js] : judges_of) EXPECT_EQ(js.size(), 3u) << q;
  EXPECT_LE(hi - lo, 1u);
}

}  // namespace

TEST(AssignJudges, ThreeJudgesEachSeeEverything) {
  const auto sessions = assign_judges(ids(510), ids(3, "j"), 1);
  ASSERT_EQ(sessions.size(), 3u);
  for (const auto& s : sessions) EXPECT_EQ(s.assignment.size(), 510u);
  check_cover(sessions, 510);
}

TEST(AssignJudges, TwelveJudgesBalanced) {
  const auto sessions = assign_judges(ids(510), ids(12, "j"), 7);
  check_cover(sessions, 510);
  for (const auto& s : sessions) {
    EXPECT_TRUE(s.assignment.size() == 127 || s.assignment.size() == 128) << s.assignment.size();
  }
}

TEST(AssignJudges, PropertySweep) {
  for (std::size_t judges = 3; judges <= 9; ++judges) {
    for (std::size_t n : {1u, 2u, 5u, 17u, 100u}) check_cover(assign_judges(ids(n), ids(judges, "j"), n), n);
  }
}

TEST(AssignJudges, DeterministicAndErrors) {
  const auto a = assign_judges(ids(30), ids(5, "j"), 9);
  const auto b = assign_judges(ids(30), ids(5, "j"), 9);
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].session_id, b[i].session_id);
    EXPECT_EQ(a[i].assignment, b[i].assignment);
  }
  EXPECT_THROW(assign_judges(ids(10), ids(2, "j"), 1), TooFewJudgesError);
  EXPECT_THROW(assign_judges(ids(10), {"a", "b", "a"}, 1), TooFewJudgesError);
  EXPECT_NE(session_id_for("j0", 1), session_id_for("j0", 2));
}

TEST(Service, NextIsIdempotentAndHidesGold) {
  AnnotationService svc(small_pool(8), ids(3, "j"), 5, fresh_log("idem.jsonl"), fixed_clock);
  const auto sid = svc.open_session("j0");
  EXPECT_EQ(svc.open_session("j0"), sid);
  const auto a = svc.next_item(sid);
  const auto b = svc.next_item(sid);
  EXPECT_FALSE(a.done);
  EXPECT_EQ(a.item.query_id, b.item.query_id);
  EXPECT_EQ(a.item.index, 1u);
  const json payload = to_json(a);
  EXPECT_FALSE(payload.contains("label"));
  EXPECT_FALSE(payload.contains("gold_label"));
  EXPECT_FALSE(payload.contains("prior_correct"));
  EXPECT_EQ(payload.dump().find("intensifies"), std::string::npos);
  EXPECT_EQ(payload.dump().find("attenuates"), std::string::npos);
  EXPECT_THROW(svc.open_session("stranger"), UnknownJudgeError);
  EXPECT_THROW(svc.next_item("s-nope"), UnknownSessionError);
}

TEST(Service, SubmitRulesAndDone) {
  AnnotationService svc(small_pool(4), ids(3, "j"), 5, fresh_log("rules.jsonl"), fixed_clock);
  const auto sid = svc.open_session("j1");
  const auto first = svc.next_item(sid).item.query_id;

  Submission bad = answer_for(first);
  bad.aspects = {Aspect::none, Aspect::mediator};
  EXPECT_THROW(svc.submit(sid, bad), InvariantViolationError);
  EXPECT_THROW(svc.submit(sid, answer_for("not-next")), OutOfOrderError);
  EXPECT_THROW(svc.submit("s-nope", answer_for(first)), UnknownSessionError);
  EXPECT_TRUE(svc.records().empty());

  EXPECT_EQ(svc.submit(sid, answer_for(first)), 1u);
  EXPECT_THROW(svc.submit(sid, answer_for(first)), DuplicateSubmissionError);
  while (!svc.next_item(sid).done) svc.submit(sid, answer_for(svc.next_item(sid).item.query_id));
  const auto n = svc.next_item(sid);
  EXPECT_EQ(n.answered, n.total);
  EXPECT_EQ(svc.records().size(), 4u);
  EXPECT_EQ(svc.records()[0].timestamp_ms, 42);
  EXPECT_EQ(svc.records()[0].judge_id, "j1");
}

TEST(Service, RestartReplaysLog) {
  const auto log = fresh_log("restart.jsonl");
  const auto pool = small_pool(6);
  std::string sid;
  std::vector<std::string> done;
  {
    AnnotationService svc(pool, ids(3, "j"), 8, log, fixed_clock);
    sid = svc.open_session("j2");
    for (int i = 0; i < 3; ++i) {
      const auto q = svc.next_item(sid).item.query_id;
      done.push_back(q);
      svc.submit(sid, answer_for(q));
    }
  }
  const auto before = synth::slurp(log);
  {
    // A torn final line, as after a crash mid-write.
    std::ofstream out(log, std::ios::app | std::ios::binary);
    out << "{\"query_id\":\"half";
  }
  AnnotationService svc(pool, ids(3, "j"), 8, log, fixed_clock);
  EXPECT_EQ(svc.open_session("j2"), sid);
  const auto next = svc.next_item(sid);
  EXPECT_EQ(next.answered, 3u);
  EXPECT_EQ(std::find(done.begin(), done.end(), next.item.query_id), done.end());
  EXPECT_THROW(svc.submit(sid, answer_for(done[0])), DuplicateSubmissionError);
  svc.submit(sid, answer_for(next.item.query_id));
  EXPECT_EQ(svc.records().size(), 4u);
  EXPECT_TRUE(synth::slurp(log).starts_with(before));
  EXPECT_EQ(*svc.stats(), to_json(summarize(svc.pool(), read_judgments(log))));
}

TEST(Service, StatsMatchOfflineSummary) {
  const auto log = fresh_log("stats.jsonl");
  AnnotationService svc(small_pool(6), ids(4, "j"), 2, log, fixed_clock);
  for (const auto& j : ids(4, "j")) {
    const auto sid = svc.open_session(j);
    while (!svc.next_item(sid).done) svc.submit(sid, answer_for(svc.next_item(sid).item.query_id));
  }
  const json live = *svc.stats();
  EXPECT_EQ(live["queries_complete"], 6);
  EXPECT_EQ(live, to_json(summarize(svc.pool(), read_judgments(log))));
}

TEST(Service, ConcurrentSubmitters) {
  const auto log = fresh_log("concurrent.jsonl");
  AnnotationService svc(small_pool(40), ids(6, "j"), 4, log, fixed_clock);
  std::vector<std::thread> threads;
  for (const auto& j : ids(6, "j")) {
    threads.emplace_back([&svc, j] {
      const auto sid = svc.open_session(j);
      while (true) {
        const auto n = svc.next_item(sid);
        if (n.done) break;
        svc.submit(sid, answer_for(n.item.query_id));
        (void)svc.stats();
      }
    });
  }
  for (auto& t : threads) t.join();
  EXPECT_EQ(svc.records().size(), 120u);
  EXPECT_EQ(read_judgments(log).size(), 120u);
  EXPECT_EQ((*svc.stats())["queries_complete"], 40);
}

class HttpFixture : public ::testing::Test {
 protected:
  void SetUp() override {
    svc_ = std::make_unique<AnnotationService>(small_pool(4), ids(3, "j"), 6, fresh_log("http.jsonl"),
                                               fixed_clock);
    http_ = std::make_unique<HttpService>(*svc_);
    port_ = http_->bind("127.0.0.1", 0);
    ASSERT_GT(port_, 0);
    thread_ = std::thread([this] { http_->listen(); });
    http_->wait_until_ready();
    client_ = std::make_unique<httplib::Client>("127.0.0.1", port_);
  }
  void TearDown() override {
    http_->stop();
    thread_.join();
  }

  httplib::Result post(const std::string& path, const json& body) {
    return client_->Post(path, body.dump(), "application/json");
  }

  std::unique_ptr<AnnotationService> svc_;
  std::unique_ptr<HttpService> http_;
  std::unique_ptr<httplib::Client> client_;
  std::thread thread_;
  int port_ = 0;
};

TEST_F(HttpFixture, HappyPath) {
  auto r = post("/session", {{"judge_id", "j0"}});
  ASSERT_TRUE(r);
  EXPECT_EQ(r->status, 201);
  const auto sid = json::parse(r->body)["session_id"].get<std::string>();

  r = client_->Get("/session/" + sid + "/next");
  ASSERT_TRUE(r);
  EXPECT_EQ(r->status, 200);
  const json item = json::parse(r->body);
  EXPECT_FALSE(item["done"].get<bool>());
  EXPECT_TRUE(item.contains("chain"));
  EXPECT_FALSE(item.contains("label"));

  r = post("/session/" + sid + "/answer", {{"query_id", item["query_id"]},
                                           {"answer", "attenuates"},
                                           {"helpfulness", "helpful"},
                                           {"aspects", {"mediator"}}});
  ASSERT_TRUE(r);
  EXPECT_EQ(r->status, 200);
  EXPECT_EQ(json::parse(r->body)["answered"], 1);

  r = client_->Get("/stats");
  ASSERT_TRUE(r);
  EXPECT_EQ(r->status, 200);
  EXPECT_EQ(json::parse(r->body), *svc_->stats());
}

TEST_F(HttpFixture, ErrorStatusCodes) {
  auto r = post("/session", {{"judge_id", "nobody"}});
  EXPECT_EQ(r->status, 403);
  EXPECT_EQ(json::parse(r->body)["error"], "unknown_judge");
  EXPECT_EQ(client_->Post("/session", "not json", "application/json")->status, 400);
  EXPECT_EQ(client_->Get("/session/s-missing/next")->status, 404);

  const auto sid = json::parse(post("/session", {{"judge_id", "j1"}})->body)["session_id"].get<std::string>();
  const auto qid = json::parse(client_->Get("/session/" + sid + "/next")->body)["query_id"];
  json body = {{"query_id", qid}, {"answer", "intensifies"}, {"helpfulness", "helpful"}, {"aspects", {"none", "structure"}}};
  r = post("/session/" + sid + "/answer", body);
  EXPECT_EQ(r->status, 422);
  EXPECT_EQ(json::parse(r->body)["error"], "invariant_violation");

  body["answer"] = "maybe";
  EXPECT_EQ(post("/session/" + sid + "/answer", body)->status, 400);

  body["answer"] = "intensifies";
  body["aspects"] = {"structure"};
  body["query_id"] = "elsewhere";
  r = post("/session/" + sid + "/answer", body);
  EXPECT_EQ(r->status, 409);
  EXPECT_EQ(json::parse(r->body)["error"], "out_of_order");

  body["query_id"] = qid;
  EXPECT_EQ(post("/session/" + sid + "/answer", body)->status, 200);
  r = post("/session/" + sid + "/answer", body);
  EXPECT_EQ(r->status, 409);
  EXPECT_EQ(json::parse(r->body)["error"], "duplicate");
  EXPECT_EQ(svc_->records().size(), 1u);
}
