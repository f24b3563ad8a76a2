// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The infgraph Authors
//
// infgraph: command-line front end for the toolkit.

#include <CLI11.hpp>
#include <csignal>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include "infgraph/bleu.hpp"
#include "infgraph/corpus.hpp"
#include "infgraph/dot.hpp"
#include "infgraph/evalstats.hpp"
#include "infgraph/generator.hpp"
#include "infgraph/graph.hpp"
#include "infgraph/harness.hpp"
#include "infgraph/json_io.hpp"
#include "infgraph/metrics.hpp"
#include "infgraph/template.hpp"
#include "infgraph/text.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace infgraph;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitError = 2;

std::string read_text(const fs::path& path) {
  if (path == "-") {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    return ss.str();
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text(const fs::path& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out || !(out << text)) throw IoError("cannot write " + path.string());
}

void write_json(const fs::path& path, const json& j) { write_text(path, j.dump(2) + "\n"); }

std::vector<SeqPair> load_parallel(const fs::path& path) {
  std::istringstream in(read_text(path));
  return read_parallel_corpus(in);
}

TemplateFormat parse_format(const std::string& s) {
  return s == "update" ? TemplateFormat::update : TemplateFormat::situation;
}

// First TAB-separated field of every non-blank line.
std::vector<InputSequence> load_inputs(const fs::path& path) {
  std::istringstream in(read_text(path));
  std::vector<InputSequence> out;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (text::trim(line).empty()) continue;
    out.push_back({line.substr(0, line.find('\t'))});
  }
  return out;
}

std::vector<std::string> load_lines(const fs::path& path) {
  std::istringstream in(read_text(path));
  std::vector<std::string> out;
  std::string line;
  while (std::getline(in, line)) {
    auto t = text::trim(line);
    if (!t.empty() && t.front() != '#') out.emplace_back(t);
  }
  return out;
}

InfluenceGraph graph_or_empty(const std::string& raw) {
  if (text::trim(raw).empty()) return {};
  auto gated = validity_gate(raw);
  return gated.graph ? *gated.graph : InfluenceGraph{};
}

// --- ingest ---------------------------------------------------------------

struct IngestOpts {
  std::string dataset;
  std::string split;
  fs::path in;
  fs::path out;
  std::string manifest;
  std::string format = "situation";
  fs::path stats_out;
};

int run_ingest(const IngestOpts& o) {
  const auto dataset = dataset_from_string(o.dataset);
  const auto split = split_from_string(o.split);
  if (!dataset || !split) throw CLI::ValidationError("unknown dataset or split");
  const auto format = parse_format(o.format);

  CorpusStats stats;
  std::ostringstream body;
  if (*dataset == Dataset::wiqa) {
    auto corpus = ingest_wiqa(o.in);
    stats = corpus.stats;
    write_parallel_corpus(build_parallel_corpus(corpus.examples, format), body);
  } else {
    auto corpus = ingest_defeasible(o.in);
    stats = corpus.stats;
    for (const auto& q : corpus.queries) {
      body << encode_defeasible(q, format).text << '\t' << to_string(q.gold_label) << '\n';
    }
  }
  if (!o.out.empty()) write_text(o.out, body.str());

  json report = to_json(stats);
  report["dataset"] = o.dataset;
  report["split"] = o.split;
  int rc = kExitOk;
  if (!o.manifest.empty()) {
    const SplitManifest m =
        o.manifest == "published" ? published_manifest() : load_manifest(o.manifest);
    if (auto mismatch = check_manifest(m, *dataset, *split, stats.valid)) {
      report["manifest"] = {{"ok", false}, {"detail", *mismatch}};
      std::cerr << "manifest mismatch: " << *mismatch << "\n";
      rc = kExitCheckFailed;
    } else {
      report["manifest"] = {{"ok", true}, {"expected", *m.expected(*dataset, *split)}};
    }
  }
  if (!o.stats_out.empty()) {
    write_json(o.stats_out, report);
  } else {
    std::cerr << report.dump(2) << "\n";
  }
  return rc;
}

// --- encode ---------------------------------------------------------------

struct EncodeOpts {
  std::string passage;
  fs::path dot;
  std::string premise;
  std::string hypothesis;
  std::string update;
  std::string format = "situation";
};

int run_encode(const EncodeOpts& o) {
  const auto format = parse_format(o.format);
  if (!o.dot.empty()) {
    WiqaExample ex{"cli", o.passage, parse_dot(read_text(o.dot))};
    auto pair = encode_wiqa(ex, format);
    std::cout << pair.input.text << '\t' << pair.output << '\n';
    return kExitOk;
  }
  if (o.premise.empty() || o.hypothesis.empty() || o.update.empty()) {
    throw CLI::ValidationError("need --dot, or all of --premise/--hypothesis/--update");
  }
  DefeasibleQuery q{"cli", o.premise, o.hypothesis, o.update, Label::intensifies, Source::snli};
  std::cout << encode_defeasible(q, format).text << '\n';
  return kExitOk;
}

// --- generate -------------------------------------------------------------

struct GenerateOpts {
  std::string backend = "copy";
  fs::path in;
  fs::path out;
  fs::path report;
  fs::path train;
  std::uint64_t seed = 0;
  std::string endpoint = RemoteConfig{}.endpoint;
  int timeout_ms = 30000;
  int max_length = 512;
  std::size_t threads = 1;
  std::string format = "situation";
};

int run_generate(const GenerateOpts& o) {
  const auto format = parse_format(o.format);
  std::unique_ptr<GeneratorBackend> backend;
  if (o.backend == "copy") {
    backend = std::make_unique<CopyBaseline>(o.seed, format);
  } else if (o.backend == "retrieval") {
    if (o.train.empty()) throw CLI::ValidationError("--train is required for the retrieval backend");
    backend = std::make_unique<RetrievalBaseline>(load_parallel(o.train), format);
  } else if (o.backend == "remote") {
    backend = std::make_unique<RemoteGenerator>(
        RemoteConfig{o.endpoint, std::chrono::milliseconds(o.timeout_ms), o.max_length});
  } else {
    throw CLI::ValidationError("unknown backend '" + o.backend + "'");
  }

  const auto inputs = load_inputs(o.in);
  const auto gen = generate_corpus(*backend, inputs, o.threads);

  std::ostringstream body;
  json items = json::array();
  for (std::size_t i = 0; i < inputs.size(); ++i) {
    const auto& r = gen.results[i];
    std::string dot;
    if (r.graph) {
      try {
        dot = serialize_dot(*r.graph);
      } catch (const Error&) {
        dot.clear();
      }
    }
    body << inputs[i].text << '\t' << dot << '\n';
    json item = to_json(r);
    item["index"] = i + 1;
    items.push_back(std::move(item));
  }
  write_text(o.out, body.str());
  if (!o.report.empty()) {
    json rep{{"backend", o.backend}, {"n", inputs.size()}, {"results", items}};
    rep["validity_rate"] = gen.validity_rate ? json(*gen.validity_rate) : json(nullptr);
    write_json(o.report, rep);
  }
  return kExitOk;
}

// --- validate / prune -----------------------------------------------------

struct ValidateOpts {
  fs::path in = "-";
  bool repair = false;
};

int run_validate(const ValidateOpts& o) {
  const std::string raw = read_text(o.in);
  json out;
  InfluenceGraph g;
  if (o.repair) {
    auto r = repair_dot(raw);
    g = std::move(r.graph);
    out["repairs"] = json::array();
    for (const auto& a : r.log) out["repairs"].push_back(to_json(a));
  } else {
    g = parse_dot(raw);
  }
  const auto report = validate_schema(g);
  out["report"] = to_json(report);
  if (report.valid()) out["canonical"] = serialize_dot(g);
  std::cout << out.dump(2) << '\n';
  return report.valid() ? kExitOk : kExitCheckFailed;
}

struct PruneOpts {
  fs::path in = "-";
  std::string hypothesis;
};

int run_prune(const PruneOpts& o) {
  const auto g = parse_dot(read_text(o.in));
  const auto chain = o.hypothesis.empty() ? prune_to_strengthening_chain(g)
                                          : prune_to_strengthening_chain(g, o.hypothesis);
  const auto red = detect_redundancy(g);
  json collisions = json::array();
  for (const auto& [a, b] : red.collisions) collisions.push_back({to_tag(a), to_tag(b)});
  std::cout << json{{"chain", to_json(chain)},
                    {"redundant", red.redundant},
                    {"collisions", collisions}}
                   .dump(2)
            << '\n';
  return kExitOk;
}

// --- pool -----------------------------------------------------------------

struct PoolOpts {
  fs::path correct;
  fs::path wrong;
  std::size_t k = 255;
  std::uint64_t seed = 0;
  fs::path out;
};

int run_pool(const PoolOpts& o) {
  const auto pool = build_eval_pool(read_candidates(o.correct), read_candidates(o.wrong), o.k, o.seed);
  write_pool(o.out, pool);
  std::cerr << "wrote " << pool.size() << " items to " << o.out << "\n";
  return kExitOk;
}

// --- score ----------------------------------------------------------------

struct ScoreOpts {
  fs::path gen;
  fs::path ref;
  fs::path out;
};

int run_score(const ScoreOpts& o) {
  const auto refs = load_parallel(o.ref);
  std::vector<std::pair<std::string, std::string>> gens;  // id, raw DOT
  if (fs::is_directory(o.gen)) {
    std::vector<fs::path> files;
    for (const auto& e : fs::directory_iterator(o.gen)) {
      if (e.is_regular_file() && e.path().extension() == ".dot") files.push_back(e.path());
    }
    std::sort(files.begin(), files.end());
    for (const auto& f : files) gens.emplace_back(f.stem().string(), read_text(f));
  } else {
    std::istringstream in(read_text(o.gen));
    std::string line;
    std::size_t n = 0;
    while (std::getline(in, line)) {
      if (text::trim(line).empty()) continue;
      ++n;
      const auto tab = line.find('\t');
      const std::string input = line.substr(0, tab);
      const std::string dot = tab == std::string::npos ? std::string() : line.substr(tab + 1);
      if (n <= refs.size() && input != refs[n - 1].input.text) {
        throw IdMismatchError("line " + std::to_string(n) + ": generated input differs from reference");
      }
      gens.emplace_back(std::to_string(n), dot);
    }
  }
  if (gens.size() != refs.size()) {
    throw IdMismatchError(std::to_string(gens.size()) + " generated graphs for " +
                          std::to_string(refs.size()) + " references");
  }
  std::vector<ScoredPair> pairs;
  pairs.reserve(refs.size());
  for (std::size_t i = 0; i < refs.size(); ++i) {
    pairs.push_back({gens[i].first, graph_or_empty(gens[i].second), parse_dot(refs[i].output)});
  }
  write_json(o.out, to_json(corpus_report(pairs)));
  return kExitOk;
}

// --- stats ----------------------------------------------------------------

struct StatsOpts {
  fs::path judgments;
  fs::path pool;
  fs::path out;
};

int run_stats(const StatsOpts& o) {
  std::size_t skipped = 0;
  const auto records = read_judgments(o.judgments, &skipped);
  if (skipped) std::cerr << "skipped " << skipped << " unreadable log lines\n";
  const auto pool = read_pool(o.pool);
  write_json(o.out, to_json(summarize(pool, records)));
  return kExitOk;
}

// --- serve ----------------------------------------------------------------

struct ServeOpts {
  fs::path pool;
  fs::path judges;
  fs::path log;
  std::string addr = "127.0.0.1:8080";
  std::uint64_t seed = 0;
  fs::path static_dir;
};

int run_serve(const ServeOpts& o) {
  const auto colon = o.addr.rfind(':');
  if (colon == std::string::npos) throw CLI::ValidationError("--addr must be host:port");
  const std::string host = o.addr.substr(0, colon);
  const int port = std::stoi(o.addr.substr(colon + 1));

  AnnotationService service(read_pool(o.pool), load_lines(o.judges), o.seed, o.log);
  HttpService http(service);
  if (!o.static_dir.empty()) http.mount_static(o.static_dir);
  const int bound = http.bind(host, port);
  if (bound < 0) throw IoError("cannot bind " + o.addr);

  sigset_t signals;
  sigemptyset(&signals);
  sigaddset(&signals, SIGINT);
  sigaddset(&signals, SIGTERM);
  pthread_sigmask(SIG_BLOCK, &signals, nullptr);
  std::jthread waiter([&] {
    int sig = 0;
    sigwait(&signals, &sig);
    http.stop();
  });

  std::cerr << "serving " << service.pool().size() << " items on " << host << ":" << bound << "\n";
  http.listen();
  if (waiter.joinable()) {
    pthread_kill(waiter.native_handle(), SIGTERM);
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"infgraph: influence-graph generation and evaluation toolkit"};
  app.set_config("--config", "", "TOML/INI file with option defaults (flags win)");
  app.require_subcommand(1);
  const std::vector<std::string> datasets{"wiqa", "atomic", "social", "snli"};
  const std::vector<std::string> formats{"situation", "update"};
  std::function<int()> action;

  IngestOpts ingest;
  auto* c = app.add_subcommand("ingest", "Read a record file, report stats, write the parallel corpus");
  c->add_option("--dataset", ingest.dataset)->required()->check(CLI::IsMember(datasets));
  c->add_option("--split", ingest.split)->required()->check(CLI::IsMember({"train", "dev", "test"}));
  c->add_option("--in", ingest.in)->required()->check(CLI::ExistingFile);
  c->add_option("--out", ingest.out, "input<TAB>output lines");
  c->add_option("--manifest", ingest.manifest, "manifest JSON, or 'published' for the built-in counts");
  c->add_option("--stats", ingest.stats_out, "write stats JSON here instead of stderr");
  c->add_option("--format", ingest.format)->check(CLI::IsMember(formats));
  c->callback([&] { action = [&] { return run_ingest(ingest); }; });

  EncodeOpts encode;
  c = app.add_subcommand("encode", "Encode one example into the linear template");
  c->add_option("--passage", encode.passage);
  c->add_option("--dot", encode.dot, "graph file; selects WIQA encoding");
  c->add_option("--premise", encode.premise);
  c->add_option("--hypothesis", encode.hypothesis);
  c->add_option("--update", encode.update);
  c->add_option("--format", encode.format)->check(CLI::IsMember(formats));
  c->callback([&] { action = [&] { return run_encode(encode); }; });

  GenerateOpts generate;
  c = app.add_subcommand("generate", "Generate a graph for every input line");
  c->add_option("--backend", generate.backend)->check(CLI::IsMember({"copy", "retrieval", "remote"}));
  c->add_option("--in", generate.in, "one input per line; text after a TAB is ignored")->required();
  c->add_option("--out", generate.out, "input<TAB>graph lines")->required();
  c->add_option("--report", generate.report, "per-item results and validity rate");
  c->add_option("--train", generate.train, "parallel corpus for the retrieval backend");
  c->add_option("--seed", generate.seed);
  c->add_option("--endpoint", generate.endpoint);
  c->add_option("--timeout-ms", generate.timeout_ms);
  c->add_option("--max-length", generate.max_length);
  c->add_option("--threads", generate.threads)->check(CLI::PositiveNumber);
  c->add_option("--format", generate.format)->check(CLI::IsMember(formats));
  c->callback([&] { action = [&] { return run_generate(generate); }; });

  ValidateOpts validate;
  c = app.add_subcommand("validate", "Check a DOT graph against the schema");
  c->add_option("--in", validate.in, "DOT file or '-'");
  c->add_flag("--repair", validate.repair, "run the repair pass before validating");
  c->callback([&] { action = [&] { return run_validate(validate); }; });

  PruneOpts prune;
  c = app.add_subcommand("prune", "Extract the strengthening chain and report redundancy");
  c->add_option("--in", prune.in, "DOT file or '-'");
  c->add_option("--hypothesis", prune.hypothesis);
  c->callback([&] { action = [&] { return run_prune(prune); }; });

  PoolOpts pool;
  c = app.add_subcommand("pool", "Build a balanced evaluation pool");
  c->add_option("--correct", pool.correct)->required()->check(CLI::ExistingFile);
  c->add_option("--wrong", pool.wrong)->required()->check(CLI::ExistingFile);
  c->add_option("--k", pool.k);
  c->add_option("--seed", pool.seed);
  c->add_option("--out", pool.out)->required();
  c->callback([&] { action = [&] { return run_pool(pool); }; });

  ScoreOpts score;
  c = app.add_subcommand("score", "Score generated graphs against references");
  c->add_option("--gen", score.gen, "input<TAB>graph file, or a directory of .dot files")
      ->required()
      ->check(CLI::ExistingPath);
  c->add_option("--ref", score.ref, "parallel corpus")->required()->check(CLI::ExistingFile);
  c->add_option("--out", score.out)->required();
  c->callback([&] { action = [&] { return run_score(score); }; });

  StatsOpts stats;
  c = app.add_subcommand("stats", "Summarize a judgment log");
  c->add_option("--judgments", stats.judgments)->required()->check(CLI::ExistingFile);
  c->add_option("--pool", stats.pool)->required()->check(CLI::ExistingFile);
  c->add_option("--out", stats.out)->required();
  c->callback([&] { action = [&] { return run_stats(stats); }; });

  ServeOpts serve;
  c = app.add_subcommand("serve", "Run the annotation service");
  c->add_option("--pool", serve.pool)->required()->check(CLI::ExistingFile);
  c->add_option("--judges", serve.judges, "one judge id per line")->required()->check(CLI::ExistingFile);
  c->add_option("--log", serve.log)->required();
  c->add_option("--addr", serve.addr);
  c->add_option("--seed", serve.seed);
  c->add_option("--static", serve.static_dir)->check(CLI::ExistingDirectory);
  c->callback([&] { action = [&] { return run_serve(serve); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }
  try {
    return action();
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const std::exception& e) {
    std::cerr << "infgraph: " << e.what() << "\n";
    return kExitError;
  }
}
