// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The infgraph Authors

#include "infgraph/json_io.hpp"

#include <fstream>

#include "infgraph/text.hpp"

namespace infgraph {

using nlohmann::json;

namespace {

std::string get_string(const json& j, const char* field) {
  auto it = j.find(field);
  if (it == j.end() || !it->is_string()) {
    throw FormatError("missing or non-string field '" + std::string(field) + "'");
  }
  return it->get<std::string>();
}

template <typename Enum, typename Parse>
Enum get_enum(const json& j, const char* field, Parse parse) {
  const std::string v = get_string(j, field);
  auto e = parse(v);
  if (!e) throw FormatError("bad value '" + v + "' for field '" + std::string(field) + "'");
  return *e;
}

json array4(const std::array<double, 4>& v, const std::array<std::string_view, 4>& names) {
  json out = json::object();
  for (std::size_t i = 0; i < 4; ++i) out[std::string(names[i])] = v[i];
  return out;
}

json counts4(const std::array<std::size_t, 4>& v, const std::array<std::string_view, 4>& names) {
  json out = json::object();
  for (std::size_t i = 0; i < 4; ++i) out[std::string(names[i])] = v[i];
  return out;
}

constexpr std::array<std::string_view, 4> kAspectNames = {"mediator", "extraneous", "structure", "none"};
constexpr std::array<std::string_view, 4> kHelpNames = {"helpful", "relevant_not_helpful",
                                                        "irrelevant_misleading", "no_majority"};

template <typename T, typename FromJson>
std::vector<T> read_jsonl_with_header(const std::filesystem::path& path, std::string_view schema,
                                      FromJson from_json) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read " + path.string());
  std::vector<T> out;
  std::string line;
  std::size_t lineno = 0;
  bool header = false;
  while (std::getline(in, line)) {
    ++lineno;
    if (text::trim(line).empty()) continue;
    json j = json::parse(line, nullptr, false);
    if (j.is_discarded()) throw FormatError(path.string() + ":" + std::to_string(lineno) + ": bad JSON");
    if (!header) {
      if (j.value("schema", "") != schema || j.value("version", -1) != kRecordVersion) {
        throw SchemaVersionError(path.string() + ": expected header for " + std::string(schema));
      }
      header = true;
      continue;
    }
    try {
      out.push_back(from_json(j));
    } catch (const Error& e) {
      throw FormatError(path.string() + ":" + std::to_string(lineno) + ": " + e.what());
    }
  }
  return out;
}

template <typename T>
void write_jsonl_with_header(const std::filesystem::path& path, std::string_view schema,
                             const std::vector<T>& items) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path.string());
  out << json{{"schema", schema}, {"version", kRecordVersion}}.dump() << '\n';
  for (const auto& item : items) out << to_json(item).dump() << '\n';
  if (!out) throw IoError("write failed: " + path.string());
}

}  // namespace

json to_json(const ChainGraph& c) {
  return {{"contextualizer", c.contextualizer},
          {"situation", c.situation},
          {"mediator", c.mediator},
          {"hypothesis", c.hypothesis}};
}

ChainGraph chain_from_json(const json& j) {
  return {get_string(j, "contextualizer"), get_string(j, "situation"), get_string(j, "mediator"),
          get_string(j, "hypothesis")};
}

json to_json(const DefeasibleQuery& q) {
  return {{"id", q.id},
          {"premise", q.premise},
          {"hypothesis", q.hypothesis},
          {"update", q.update},
          {"label", to_string(q.gold_label)},
          {"source", to_string(q.source)}};
}

DefeasibleQuery query_from_json(const json& j) {
  DefeasibleQuery q;
  q.id = get_string(j, "id");
  q.premise = get_string(j, "premise");
  q.hypothesis = get_string(j, "hypothesis");
  q.update = get_string(j, "update");
  q.gold_label = get_enum<Label>(j, "label", label_from_string);
  q.source = get_enum<Source>(j, "source", source_from_string);
  return q;
}

json to_json(const PoolItem& item) {
  json j = to_json(item.query);
  j["chain"] = to_json(item.chain);
  j["prior_correct"] = item.prior_correct;
  return j;
}

PoolItem pool_item_from_json(const json& j) {
  PoolItem item;
  item.query = query_from_json(j);
  if (!j.contains("chain")) throw FormatError("missing field 'chain'");
  item.chain = chain_from_json(j["chain"]);
  if (!j.contains("prior_correct") || !j["prior_correct"].is_boolean()) {
    throw FormatError("missing or non-boolean field 'prior_correct'");
  }
  item.prior_correct = j["prior_correct"].get<bool>();
  return item;
}

json to_json(const PoolCandidate& c) {
  json j = to_json(c.query);
  j["chain"] = to_json(c.chain);
  return j;
}

PoolCandidate candidate_from_json(const json& j) {
  if (!j.contains("chain")) throw FormatError("missing field 'chain'");
  return {query_from_json(j), chain_from_json(j["chain"])};
}

json to_json(const JudgmentRecord& r) {
  json aspects = json::array();
  for (Aspect a : r.aspects) aspects.push_back(to_string(a));
  return {{"query_id", r.query_id},       {"judge_id", r.judge_id},
          {"answer", to_string(r.answer)}, {"helpfulness", to_string(r.helpfulness)},
          {"aspects", aspects},            {"timestamp", r.timestamp_ms}};
}

JudgmentRecord judgment_from_json(const json& j) {
  if (!j.is_object()) throw FormatError("judgment must be an object");
  JudgmentRecord r;
  r.query_id = get_string(j, "query_id");
  if (j.contains("judge_id")) r.judge_id = get_string(j, "judge_id");
  r.answer = get_enum<Label>(j, "answer", label_from_string);
  r.helpfulness = get_enum<Helpfulness>(j, "helpfulness", helpfulness_from_string);
  if (auto it = j.find("aspects"); it != j.end()) {
    if (!it->is_array()) throw FormatError("field 'aspects' must be an array");
    for (const auto& a : *it) {
      if (!a.is_string()) throw FormatError("aspect values must be strings");
      auto parsed = aspect_from_string(a.get<std::string>());
      if (!parsed) throw FormatError("bad aspect '" + a.get<std::string>() + "'");
      r.aspects.push_back(*parsed);
    }
  }
  if (auto it = j.find("timestamp"); it != j.end() && it->is_number_integer()) {
    r.timestamp_ms = it->get<std::int64_t>();
  }
  return r;
}

json to_json(const WilsonInterval& w) {
  return {{"low", w.low}, {"high", w.high}, {"center", w.center()}, {"half_width", w.half_width()}};
}

json to_json(const Accuracy& a) {
  return {{"correct", a.correct}, {"total", a.total}, {"accuracy", a.value}, {"wilson95", to_json(a.interval)}};
}

json to_json(const EvalSummary& s) {
  json j = {{"pool_size", s.pool_size},
            {"judgments", s.judgments},
            {"queries_complete", s.queries_complete},
            {"unmatched_records", s.unmatched_records}};
  if (s.accuracy) {
    json by_source = json::object();
    for (const auto& [src, acc] : s.accuracy->by_source) by_source[std::string(to_string(src))] = to_json(acc);
    j["accuracy"] = {{"overall", to_json(s.accuracy->overall)}, {"by_source", by_source}};
  } else {
    j["accuracy"] = nullptr;
  }
  if (s.helpfulness) {
    const auto& h = *s.helpfulness;
    j["helpfulness"] = {
        {"queries", h.queries},
        {"counts", counts4({h.helpful, h.relevant_not_helpful, h.irrelevant_misleading, h.no_majority}, kHelpNames)},
        {"percent", array4(h.percentages(), kHelpNames)}};
  } else {
    j["helpfulness"] = nullptr;
  }
  j["majority_agreement"] = s.majority_agreement ? json(*s.majority_agreement) : json(nullptr);
  if (s.aspects) {
    const auto& a = *s.aspects;
    j["aspects"] = {
        {"useful_judges",
         {{"judgments", a.useful_judgments},
          {"selections", a.useful_selections()},
          {"counts", counts4(a.useful_counts, kAspectNames)},
          {"percent", array4(a.useful_percentages(), kAspectNames)}}},
        {"all_judges",
         {{"judgments", a.judgments},
          {"selections", a.all_selections()},
          {"counts", counts4(a.all_counts, kAspectNames)},
          {"percent", array4(a.all_percentages(), kAspectNames)}}}};
  } else {
    j["aspects"] = nullptr;
  }
  if (s.flips) {
    const auto& f = *s.flips;
    j["flip_matrix"] = {{"right_right", f.right_right},
                        {"right_wrong", f.right_wrong},
                        {"wrong_right", f.wrong_right},
                        {"wrong_wrong", f.wrong_wrong},
                        {"before_accuracy", f.before_accuracy()},
                        {"after_accuracy", f.after_accuracy()}};
  } else {
    j["flip_matrix"] = nullptr;
  }
  if (s.mcnemar) {
    j["mcnemar"] = {{"statistic", s.mcnemar->statistic},
                    {"p_value", s.mcnemar->p_value},
                    {"method", s.mcnemar->method == McNemarMethod::chi_square_corrected
                                   ? "chi_square_corrected"
                                   : "exact_binomial"}};
  } else {
    j["mcnemar"] = nullptr;
  }
  return j;
}

json to_json(const GraphMetricsReport& r) {
  json per = json::array();
  for (const auto& g : r.per_graph) {
    per.push_back({{"id", g.id}, {"node_bleu", g.node_bleu}, {"rel_bleu", g.rel_bleu}, {"edge_match", g.edge_match}});
  }
  return {{"node_bleu", r.node_bleu},
          {"rel_bleu", r.rel_bleu},
          {"edge_match_pct", r.edge_match_pct},
          {"n_graphs", r.n_graphs},
          {"per_graph", per}};
}

json to_json(const ValidationReport& r) {
  json v = json::array();
  for (const auto& x : r.violations) v.push_back({{"kind", to_string(x.kind)}, {"detail", x.detail}});
  return {{"valid", r.valid()}, {"nodes", r.node_count}, {"edges", r.edge_count}, {"violations", v}};
}

json to_json(const CorpusStats& s) {
  json invalid = json::array();
  for (const auto& r : s.invalid_records) {
    invalid.push_back({{"line", r.line}, {"id", r.id}, {"reason", r.reason}});
  }
  return {{"total", s.total},
          {"valid", s.valid},
          {"invalid", s.invalid},
          {"invalid_records", invalid},
          {"mean_passage_tokens", s.mean_passage_tokens},
          {"graph_validity_rate", s.graph_validity_rate ? json(*s.graph_validity_rate) : json(nullptr)}};
}

json to_json(const RepairAction& a) {
  return {{"kind", to_string(a.kind)}, {"statement", a.statement}, {"detail", a.detail}};
}

json to_json(const GenerationResult& r) {
  json repairs = json::array();
  for (const auto& a : r.repairs) repairs.push_back(to_json(a));
  json j = {{"raw", r.raw}, {"valid", r.valid}, {"repairs", repairs}};
  j["error"] = r.error ? json{{"kind", to_string(r.error->kind)}, {"detail", r.error->detail}} : json(nullptr);
  if (!r.metadata.empty()) j["metadata"] = json::parse(r.metadata, nullptr, false);
  return j;
}

std::vector<PoolItem> read_pool(const std::filesystem::path& path) {
  return read_jsonl_with_header<PoolItem>(path, kPoolSchema, pool_item_from_json);
}

void write_pool(const std::filesystem::path& path, const std::vector<PoolItem>& items) {
  write_jsonl_with_header(path, kPoolSchema, items);
}

std::vector<PoolCandidate> read_candidates(const std::filesystem::path& path) {
  return read_jsonl_with_header<PoolCandidate>(path, kCandidateSchema, candidate_from_json);
}

void write_candidates(const std::filesystem::path& path, const std::vector<PoolCandidate>& items) {
  write_jsonl_with_header(path, kCandidateSchema, items);
}

std::vector<JudgmentRecord> read_judgments(const std::filesystem::path& path, std::size_t* skipped) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read " + path.string());
  std::vector<JudgmentRecord> out;
  std::size_t bad = 0;
  std::string line;
  while (std::getline(in, line)) {
    if (text::trim(line).empty()) continue;
    json j = json::parse(line, nullptr, false);
    try {
      if (j.is_discarded()) throw FormatError("bad JSON");
      out.push_back(judgment_from_json(j));
    } catch (const FormatError&) {
      ++bad;
    }
  }
  if (skipped) *skipped = bad;
  return out;
}

}  // namespace infgraph
