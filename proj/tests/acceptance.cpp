// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The infgraph Authors
//
// Acceptance checks. Prints one PASS/FAIL line per criterion and exits
// non-zero when any selected criterion fails.

#include <httplib.h>

#include <CLI11.hpp>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <random>
#include <sstream>
#include <thread>

#include "infgraph/bleu.hpp"
#include "infgraph/corpus.hpp"
#include "infgraph/dot.hpp"
#include "infgraph/evalstats.hpp"
#include "infgraph/generator.hpp"
#include "infgraph/harness.hpp"
#include "infgraph/json_io.hpp"
#include "infgraph/metrics.hpp"
#include "infgraph/template.hpp"
#include "support/enumerate.hpp"
#include "support/oracle.hpp"
#include "support/synth.hpp"

using namespace infgraph;
using nlohmann::json;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

// Collects failed sub-checks and a short description of what was measured.
class Checker {
 public:
  void expect(bool ok, const std::string& what) {
    if (!ok) failures_.push_back(what);
  }
  void note(const std::string& s) { notes_.push_back(s); }

  Outcome outcome() const {
    Outcome o;
    o.pass = failures_.empty();
    std::string out;
    for (const auto& n : notes_) out += (out.empty() ? "" : "; ") + n;
    for (const auto& f : failures_) out += (out.empty() ? "" : "; ") + ("FAILED " + f);
    o.detail = out;
    return o;
  }

 private:
  std::vector<std::string> notes_;
  std::vector<std::string> failures_;
};

std::string fmt(double v, int precision = 4) {
  std::ostringstream s;
  s.setf(std::ios::fixed);
  s.precision(precision);
  s << v;
  return s.str();
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

InfluenceGraph perturbed(std::mt19937_64& rng, const InfluenceGraph& ref) {
  InfluenceGraph gen = ref;
  for (NodeRole r : kAllRoles) {
    if (rng() % 2) gen.set_label(r, synth::perturb(rng, *ref.label(r)));
  }
  return gen;
}

Outcome golden_round_trip() {
  Checker c;
  const auto t0 = std::chrono::steady_clock::now();
  const auto dir = synth::data_dir();
  const InfluenceGraph g = parse_dot(synth::slurp(dir / "sample_graph.dot"));
  const auto report = validate_schema(g);
  c.expect(g.nodes().size() == 8, "node count " + std::to_string(g.nodes().size()) + " != 8");
  c.expect(g.edges().size() == 9, "edge count " + std::to_string(g.edges().size()) + " != 9");
  c.expect(report.valid(), "sample is not schema-valid");
  c.expect(serialize_dot(g) == synth::slurp(dir / "sample_graph.canonical.dot"),
           "serialization differs from the canonical golden file");
  const WiqaExample ex{"sample", synth::slurp(dir / "sample_passage.txt"), g};
  c.expect(encode_wiqa(ex).input.text == synth::slurp(dir / "sample_input.txt"),
           "encoded input differs from the golden input");
  const double secs = seconds_since(t0);
  c.expect(secs < 1.0, "runtime " + fmt(secs, 3) + " s >= 1 s");
  c.note("8 nodes / 9 edges / byte-identical / input match in " + fmt(secs, 3) + " s");
  return c.outcome();
}

Outcome copy_baseline_row() {
  Checker c;
  const auto t0 = std::chrono::steady_clock::now();
  constexpr std::size_t kQueries = 1000;
  std::mt19937_64 rng(20210601);
  std::vector<ScoredPair> pairs;
  pairs.reserve(kQueries);
  for (std::size_t i = 0; i < kQueries; ++i) {
    WiqaExample ex{std::to_string(i), synth::random_label(rng, 8, 30), synth::random_graph(rng)};
    const auto input = encode_wiqa(ex).input;
    const auto result = copy_baseline_generate(input, 7);
    if (!result.graph) {
      c.expect(false, "copy baseline produced no graph for query " + ex.id);
      continue;
    }
    pairs.push_back({ex.id, *result.graph, ex.graph});
  }
  const auto r = corpus_report(pairs);
  c.expect(std::abs(r.node_bleu - 37.5) <= 0.01, "Node-BLEU " + fmt(r.node_bleu) + " not 37.50 +- 0.01");
  c.expect(r.rel_bleu == 0.0, "Rel-BLEU " + fmt(r.rel_bleu) + " not exactly 0");
  c.expect(r.edge_match_pct >= 45.0 && r.edge_match_pct <= 55.0,
           "Edge-match " + fmt(r.edge_match_pct, 2) + "% outside [45, 55]");
  const double secs = seconds_since(t0);
  c.expect(secs < 30.0, "runtime " + fmt(secs, 2) + " s >= 30 s");
  c.note(std::to_string(r.n_graphs) + " queries: Node-BLEU " + fmt(r.node_bleu, 2) + ", Rel-BLEU " +
         fmt(r.rel_bleu, 2) + ", Edge-match " + fmt(r.edge_match_pct, 1) + "% in " + fmt(secs, 2) + " s");
  return c.outcome();
}

Outcome metric_identities() {
  Checker c;
  std::mt19937_64 rng(31);

  std::vector<ScoredPair> same;
  for (int i = 0; i < 100; ++i) {
    const auto g = synth::random_graph(rng);
    same.push_back({std::to_string(i), g, g});
  }
  const auto r = corpus_report(same);
  c.expect(r.node_bleu == 100.0 && r.rel_bleu == 100.0 && r.edge_match_pct == 100.0,
           "corpus_report(g, g) = (" + fmt(r.node_bleu) + ", " + fmt(r.rel_bleu) + ", " +
               fmt(r.edge_match_pct) + ")");

  // Edge harmonic mean against min(endpoints). The harmonic mean of two
  // positive numbers is never below the smaller one, so "HM <= min" can only
  // hold when the endpoints tie or one is zero; the tight bounds are
  // min <= HM <= 2 min.
  std::size_t edges = 0, above_min = 0, bound_violations = 0;
  std::string example;
  for (int i = 0; i < 1000; ++i) {
    const auto ref = synth::random_graph(rng);
    const auto gen = perturbed(rng, ref);
    const auto scores = per_role_bleu(gen, ref);
    for (const auto& e : ref.edges()) {
      const double a = scores[index_of(e.src)];
      const double b = scores[index_of(e.dst)];
      const double hm = harmonic_mean(a, b);
      const double lo = std::min(a, b);
      ++edges;
      if (hm > lo + 1e-9) {
        ++above_min;
        if (example.empty()) example = "HM(" + fmt(a, 2) + ", " + fmt(b, 2) + ") = " + fmt(hm, 2);
      }
      const bool tight = (lo == 0.0) ? hm == 0.0 : (hm >= lo - 1e-9 && hm <= 2 * lo + 1e-9);
      if (!tight) ++bound_violations;
    }
  }
  c.expect(above_min == 0, "HM <= min on " + std::to_string(above_min) + "/" + std::to_string(edges) +
                               " edges, e.g. " + example);
  c.note("min <= HM <= 2*min holds on " + std::to_string(edges - bound_violations) + "/" +
         std::to_string(edges) + " edges");
  c.expect(bound_violations == 0, "tight HM bounds");

  std::size_t improvements = 0, regressions = 0;
  while (improvements < 100) {
    const auto ref = synth::random_graph(rng);
    auto gen = ref;
    for (NodeRole role : kAllRoles) {
      if (rng() % 2) gen.set_label(role, "zz" + std::to_string(rng() % 100000));
    }
    std::vector<NodeRole> weak;
    const auto scores = per_role_bleu(gen, ref);
    for (NodeRole role : kAllRoles) {
      if (scores[index_of(role)] < 100.0) weak.push_back(role);
    }
    if (weak.empty()) continue;
    const NodeRole fix = weak[rng() % weak.size()];
    auto better = gen;
    better.set_label(fix, *ref.label(fix));
    if (node_bleu(better, ref) < node_bleu(gen, ref) || rel_bleu(better, ref) < rel_bleu(gen, ref)) {
      ++regressions;
    }
    ++improvements;
  }
  c.expect(regressions == 0, "monotonicity broke on " + std::to_string(regressions) + "/100");
  c.note("identity (100, 100, 100); monotone on 100/100 single-node improvements");
  return c.outcome();
}

Outcome bleu_oracle() {
  Checker c;
  std::mt19937_64 rng(41);
  double worst = 0.0;
  std::size_t nonzero = 0;
  for (int i = 0; i < 100; ++i) {
    // Most candidates are edits of their reference so higher orders match.
    const auto ref_text = synth::random_label(rng, 1, 14);
    const auto cand_text = i % 4 == 0 ? synth::random_label(rng, 1, 14) : synth::perturb(rng, ref_text);
    const auto cand = tokenize_label(cand_text);
    const auto ref = tokenize_label(ref_text);
    const double lib = bleu(cand, ref);
    const double ora = oracle::bleu(cand, ref);
    worst = std::max(worst, std::abs(lib - ora));
    nonzero += lib > 0.0;
  }
  std::ostringstream w;
  w << std::scientific << worst;
  c.expect(worst <= 1e-6, "max |library - oracle| = " + w.str());
  c.note("100 cases (" + std::to_string(nonzero) + " non-zero), max diff " + w.str());
  return c.outcome();
}

Outcome structure_enumeration() {
  Checker c;
  const auto adopted = support::enumerate_classes(support::situation_layer_fixed);
  const auto literal = support::enumerate_classes(support::opposite_context_and_mediator);
  c.expect(adopted.size() == 2, std::to_string(adopted.size()) + " classes, expected 2");
  std::mt19937_64 rng(51);
  const auto labels = synth::random_labels(rng);
  const auto g0 = make_complete_graph(labels, 0);
  const auto g1 = make_complete_graph(labels, 1);
  c.expect(edge_match(g0, g0) == 1 && edge_match(g1, g1) == 1, "edge_match(g, g) != 1");
  c.expect(edge_match(g0, g1) == 0 && edge_match(g1, g0) == 0, "edge_match across classes != 0");
  std::set<StructureClass> built = {structure_class(g0), structure_class(g1)};
  c.expect(built == adopted, "canonical structures differ from the enumerated classes");
  c.note("2^9 assignments -> " + std::to_string(adopted.size()) + " classes (" +
         std::to_string(literal.size()) + " with only the opposite-polarity rules)");
  return c.outcome();
}

Outcome statistics() {
  Checker c;
  const auto a = wilson_interval(356, 510, 0.95);
  const auto b = wilson_interval(255, 510, 0.95);
  c.expect(std::abs(a.half_width() - 0.040) <= 0.002, "Wilson(356, 510) half-width " + fmt(a.half_width()));
  c.expect(std::abs(b.half_width() - 0.043) <= 0.002, "Wilson(255, 510) half-width " + fmt(b.half_width()));
  const auto m = mcnemar(113, 12);
  c.expect(std::abs(m.statistic - 80.0) <= 0.01, "McNemar statistic " + fmt(m.statistic));
  std::ostringstream p;
  p << std::scientific << std::setprecision(2) << m.p_value;
  c.expect(m.p_value < 1e-6, "McNemar p " + p.str());

  std::map<std::string, bool> before, after;
  for (int i = 0; i < 510; ++i) {
    const auto id = "q" + std::to_string(i);
    before[id] = i < 255;
    after[id] = i < 243 || (i >= 255 && i < 368);
  }
  const auto f = flip_matrix(before, after);
  c.expect(std::abs(f.before_accuracy() - 0.500) < 5e-4 && std::abs(f.after_accuracy() - 0.698) < 5e-4,
           "flip marginals (" + fmt(f.before_accuracy(), 3) + ", " + fmt(f.after_accuracy(), 3) + ")");
  c.expect(f.wrong_right == 113 && f.right_wrong == 12, "flip discordant counts");
  c.note("half-widths " + fmt(a.half_width()) + " / " + fmt(b.half_width()) + ", chi2 " + fmt(m.statistic, 2) +
         " p " + p.str() + ", marginals (" + fmt(f.before_accuracy(), 3) + ", " +
         fmt(f.after_accuracy(), 3) + ")");
  return c.outcome();
}

Outcome pool_construction() {
  Checker c;
  const auto correct = synth::candidates(1745, "c", 71);
  const auto wrong = synth::candidates(255, "w", 72);
  const auto p1 = build_eval_pool(correct, wrong, 255, 2021);
  const auto p2 = build_eval_pool(correct, wrong, 255, 2021);
  const auto p3 = build_eval_pool(correct, wrong, 255, 2022);
  const auto prior = std::count_if(p1.begin(), p1.end(), [](const PoolItem& p) { return p.prior_correct; });
  c.expect(p1.size() == 510, "pool size " + std::to_string(p1.size()));
  c.expect(prior == 255, "prior-correct " + std::to_string(prior) + "/510");
  bool same = p1.size() == p2.size(), differs = false;
  for (std::size_t i = 0; i < p1.size() && i < p2.size(); ++i) {
    same = same && p1[i].query == p2[i].query && p1[i].prior_correct == p2[i].prior_correct;
    differs = differs || !(p1[i].query == p3[i].query);
  }
  c.expect(same, "same seed gave different pools");
  c.expect(differs, "different seeds gave identical pools");
  c.note("510 items, 255 prior-correct, reproducible per seed");
  return c.outcome();
}

Outcome pipeline() {
  Checker c;
  const auto corpus = ingest_wiqa(synth::data_dir() / "wiqa_synth_50.jsonl");
  c.expect(corpus.examples.size() == 50, "ingested " + std::to_string(corpus.examples.size()) + " examples");
  const auto pairs = build_parallel_corpus(corpus.examples);
  std::vector<SeqPair> train(pairs.begin(), pairs.end() - 10);
  // Held-out queries reuse training inputs.
  std::vector<SeqPair> held(pairs.begin(), pairs.begin() + 10);

  const RetrievalBaseline retrieval(train);
  const CopyBaseline copy(7);
  std::vector<ScoredPair> ret_scored, copy_scored;
  for (const auto& p : held) {
    const auto ref = parse_dot(p.output);
    const auto r = retrieval.generate(p.input);
    const auto k = copy.generate(p.input);
    c.expect(r.valid && k.valid, "invalid baseline output");
    if (r.graph) ret_scored.push_back({"", *r.graph, ref});
    if (k.graph) copy_scored.push_back({"", *k.graph, ref});
  }
  const auto rr = corpus_report(ret_scored);
  const auto cr = corpus_report(copy_scored);
  c.expect(rr.node_bleu > 37.5, "retrieval Node-BLEU " + fmt(rr.node_bleu, 2) + " <= 37.5");
  c.expect(rr.node_bleu > cr.node_bleu, "retrieval does not beat copy");
  c.note("retrieval Node-BLEU " + fmt(rr.node_bleu, 2) + " vs copy " + fmt(cr.node_bleu, 2) + " on " +
         std::to_string(held.size()) + " held-out queries");
  return c.outcome();
}

// Scripted judge answer, deterministic per (judge, query).
json scripted_answer(const std::string& judge, const std::string& qid) {
  const auto h = std::hash<std::string>{}(judge + "/" + qid);
  static constexpr std::array<const char*, 3> helps = {"helpful", "relevant_not_helpful", "irrelevant_misleading"};
  static constexpr std::array<const char*, 3> aspects = {"mediator", "extraneous", "structure"};
  json a = json::array({aspects[h % 3]});
  if ((h >> 8) % 4 == 0) a = json::array({"none"});
  return {{"query_id", qid},
          {"answer", (h >> 4) % 2 ? "intensifies" : "attenuates"},
          {"helpfulness", helps[(h >> 6) % 3]},
          {"aspects", a}};
}

class Server {
 public:
  Server(const std::vector<PoolItem>& pool, const std::vector<std::string>& judges,
         const std::filesystem::path& log)
      : svc_(pool, judges, 99, log), http_(svc_) {
    port_ = http_.bind("127.0.0.1", 0);
    thread_ = std::thread([this] { http_.listen(); });
    http_.wait_until_ready();
  }
  ~Server() {
    http_.stop();
    thread_.join();
  }
  int port() const { return port_; }

 private:
  AnnotationService svc_;
  HttpService http_;
  std::thread thread_;
  int port_ = -1;
};

Outcome harness_replay() {
  Checker c;
  const auto dir = std::filesystem::temp_directory_path() / "infgraph_acceptance";
  std::filesystem::create_directories(dir);
  const auto log = dir / "judgments.jsonl";
  std::filesystem::remove(log);

  const auto pool = build_eval_pool(synth::candidates(5, "c", 91), synth::candidates(5, "w", 92), 5, 93);
  const std::vector<std::string> judges = {"alice", "bob", "carol"};

  // Answers up to `budget` items per judge; returns how many were accepted.
  auto run = [&](int port, std::size_t budget) {
    httplib::Client cli("127.0.0.1", port);
    std::size_t accepted = 0;
    for (const auto& judge : judges) {
      auto r = cli.Post("/session", json{{"judge_id", judge}}.dump(), "application/json");
      if (!r || r->status != 201) {
        c.expect(false, "open session for " + judge);
        continue;
      }
      const auto sid = json::parse(r->body)["session_id"].get<std::string>();
      for (std::size_t i = 0; i < budget; ++i) {
        auto n = cli.Get("/session/" + sid + "/next");
        if (!n || n->status != 200) {
          c.expect(false, "next for " + judge);
          break;
        }
        const json item = json::parse(n->body);
        if (item["done"].get<bool>()) break;
        if (item.contains("label") || n->body.find("prior_correct") != std::string::npos) {
          c.expect(false, "gold label leaked to the judge");
        }
        const auto qid = item["query_id"].get<std::string>();
        auto a = cli.Post("/session/" + sid + "/answer", scripted_answer(judge, qid).dump(), "application/json");
        if (!a || a->status != 200) {
          c.expect(false, "answer rejected for " + judge + "/" + qid);
          break;
        }
        ++accepted;
      }
    }
    return accepted;
  };

  std::string before_restart;
  std::size_t first = 0, second = 0;
  {
    Server s(pool, judges, log);
    first = run(s.port(), 4);
  }
  before_restart = synth::slurp(log);
  json live;
  {
    Server s(pool, judges, log);
    second = run(s.port(), 100);
    httplib::Client cli("127.0.0.1", s.port());
    auto r = cli.Get("/stats");
    if (r && r->status == 200) live = json::parse(r->body);
  }
  const auto after = synth::slurp(log);
  c.expect(after.starts_with(before_restart), "log bytes before the restart were rewritten");

  std::size_t skipped = 0;
  const auto records = read_judgments(log, &skipped);
  const json offline = to_json(summarize(pool, records));
  c.expect(skipped == 0, std::to_string(skipped) + " unreadable log lines");
  c.expect(records.size() == 30, std::to_string(records.size()) + " logged judgments, expected 30");
  c.expect(first + second == 30, "accepted " + std::to_string(first + second) + " answers");
  c.expect(!live.is_null() && live == offline, "live /stats differs from offline summary");
  if (!live.is_null() && live != offline) {
    c.note("diff " + json::diff(offline, live).dump());
  }
  c.expect(offline["queries_complete"] == 10, "queries_complete " + offline["queries_complete"].dump());
  c.note(std::to_string(first) + " answers, restart, " + std::to_string(second) +
         " answers; /stats == offline summary; log prefix preserved");
  return c.outcome();
}

Outcome manifests() {
  Checker c;
  const auto dir = synth::data_dir();
  const auto fixture = load_manifest(dir / "fixture_manifest.json");
  struct Case {
    Dataset d;
    Split s;
    std::size_t valid;
  };
  const std::vector<Case> cases = {
      {Dataset::wiqa, Split::train, ingest_wiqa(dir / "wiqa_synth_50.jsonl").stats.valid},
      {Dataset::wiqa, Split::test, ingest_wiqa(dir / "wiqa_fixture_10.jsonl").stats.valid},
      {Dataset::atomic, Split::dev, ingest_defeasible(dir / "defeasible_fixture.jsonl").stats.valid},
  };
  for (const auto& k : cases) {
    if (auto m = check_manifest(fixture, k.d, k.s, k.valid)) c.expect(false, *m);
  }
  c.expect(check_manifest(published_manifest(), Dataset::wiqa, Split::train, 50).has_value(),
           "published manifest accepted the fixture size");
  const auto published = published_manifest();
  c.expect(published.expected(Dataset::wiqa, Split::train) == 1522u &&
               published.expected(Dataset::atomic, Split::train) == 35001u,
           "published counts");
  c.note("fixture manifests match (wiqa/train 50, wiqa/test 8, atomic/dev 5)");

  // Real corpora named <dataset>_<split>.jsonl, checked when supplied.
  const char* real = std::getenv("INFGRAPH_REAL_CORPUS_DIR");
  if (!real || !*real) {
    c.note("real corpora: INFGRAPH_REAL_CORPUS_DIR not set, skipped");
    return c.outcome();
  }
  std::size_t checked = 0;
  for (const auto& e : published.entries) {
    const auto file = std::filesystem::path(real) /
                      (std::string(to_string(e.dataset)) + "_" + std::string(to_string(e.split)) + ".jsonl");
    if (!std::filesystem::exists(file)) continue;
    const std::size_t valid = e.dataset == Dataset::wiqa ? ingest_wiqa(file).stats.valid
                                                         : ingest_defeasible(file).stats.valid;
    if (auto m = check_manifest(published, e.dataset, e.split, valid)) c.expect(false, *m);
    ++checked;
  }
  c.note("real corpora: " + std::to_string(checked) + " split files checked");
  return c.outcome();
}

struct Criterion {
  int id;
  const char* name;
  std::function<Outcome()> run;
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"infgraph acceptance checks"};
  int only = 0;
  app.add_option("--only", only, "run a single criterion (1-10)")->check(CLI::Range(1, 10));
  CLI11_PARSE(app, argc, argv);

  const std::vector<Criterion> criteria = {
      {1, "golden round trip", golden_round_trip},
      {2, "copy-baseline row", copy_baseline_row},
      {3, "metric identities", metric_identities},
      {4, "BLEU oracle equivalence", bleu_oracle},
      {5, "structure enumeration", structure_enumeration},
      {6, "statistics reproduction", statistics},
      {7, "pool construction", pool_construction},
      {8, "stub-generator pipeline", pipeline},
      {9, "harness replay equivalence", harness_replay},
      {10, "manifest mode", manifests},
  };

  int failed = 0;
  for (const auto& c : criteria) {
    if (only != 0 && c.id != only) continue;
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    std::cout << (o.pass ? "PASS" : "FAIL") << "  " << c.id << ". " << c.name << ": " << o.detail << "\n";
    failed += o.pass ? 0 : 1;
  }
  return failed == 0 ? 0 : 1;
}
