// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The infgraph Authors

#include <httplib.h>

#include "infgraph/harness.hpp"
#include "infgraph/json_io.hpp"

namespace infgraph {

namespace {

using nlohmann::json;

void reply(httplib::Response& res, int status, const json& body) {
  res.status = status;
  res.set_content(body.dump(), "application/json");
}

void fail(httplib::Response& res, int status, std::string_view error, std::string_view detail) {
  reply(res, status, json{{"error", error}, {"detail", detail}});
}

template <typename T>
T require(std::optional<T> v, std::string_view field, const std::string& raw) {
  if (!v) throw FormatError("unknown " + std::string(field) + " '" + raw + "'");
  return *v;
}

Submission submission_from_json(const json& j) {
  if (!j.is_object()) throw FormatError("body must be a JSON object");
  Submission s;
  try {
    s.query_id = j.at("query_id").get<std::string>();
    const auto answer = j.at("answer").get<std::string>();
    s.answer = require(label_from_string(answer), "answer", answer);
    const auto help = j.at("helpfulness").get<std::string>();
    s.helpfulness = require(helpfulness_from_string(help), "helpfulness", help);
    for (const auto& a : j.value("aspects", json::array())) {
      const auto raw = a.get<std::string>();
      s.aspects.push_back(require(aspect_from_string(raw), "aspect", raw));
    }
  } catch (const json::exception& e) {
    throw FormatError(e.what());
  }
  return s;
}

// Maps service exceptions onto status codes; anything else is a 500.
template <typename F>
void guarded(httplib::Response& res, F&& body) {
  try {
    body();
  } catch (const FormatError& e) {
    fail(res, 400, "bad_request", e.what());
  } catch (const UnknownJudgeError& e) {
    fail(res, 403, "unknown_judge", e.what());
  } catch (const UnknownSessionError& e) {
    fail(res, 404, "unknown_session", e.what());
  } catch (const DuplicateSubmissionError& e) {
    fail(res, 409, "duplicate", e.what());
  } catch (const OutOfOrderError& e) {
    fail(res, 409, "out_of_order", e.what());
  } catch (const InvariantViolationError& e) {
    fail(res, 422, "invariant_violation", e.what());
  } catch (const std::exception& e) {
    fail(res, 500, "internal", e.what());
  }
}

json parse_body(const httplib::Request& req) {
  json j = json::parse(req.body, nullptr, false);
  if (j.is_discarded()) throw FormatError("body is not valid JSON");
  return j;
}

}  // namespace

struct HttpService::Impl {
  explicit Impl(AnnotationService& s) : service(s) {}
  AnnotationService& service;
  httplib::Server server;
};

HttpService::HttpService(AnnotationService& service)
    : impl_(std::make_unique<Impl>(service)) {
  auto& svc = impl_->service;
  auto& srv = impl_->server;

  srv.Post("/session", [&svc](const httplib::Request& req, httplib::Response& res) {
    guarded(res, [&] {
      const json body = parse_body(req);
      if (!body.is_object() || !body.contains("judge_id") || !body["judge_id"].is_string()) {
        throw FormatError("expected {\"judge_id\": string}");
      }
      const std::string judge = body["judge_id"].get<std::string>();
      const std::string id = svc.open_session(judge);
      const NextItem next = svc.next_item(id);
      reply(res, 201,
            {{"session_id", id}, {"judge_id", judge}, {"answered", next.answered}, {"total", next.total}});
    });
  });

  srv.Get(R"(/session/([^/]+)/next)", [&svc](const httplib::Request& req, httplib::Response& res) {
    guarded(res, [&] { reply(res, 200, to_json(svc.next_item(req.matches[1].str()))); });
  });

  srv.Post(R"(/session/([^/]+)/answer)", [&svc](const httplib::Request& req, httplib::Response& res) {
    guarded(res, [&] {
      const std::string id = req.matches[1].str();
      const Submission s = submission_from_json(parse_body(req));
      const std::size_t cursor = svc.submit(id, s);
      const NextItem next = svc.next_item(id);
      reply(res, 200, {{"accepted", true}, {"answered", cursor}, {"total", next.total}, {"done", next.done}});
    });
  });

  srv.Get("/stats", [&svc](const httplib::Request&, httplib::Response& res) {
    guarded(res, [&] { reply(res, 200, *svc.stats()); });
  });
}

HttpService::~HttpService() { stop(); }

void HttpService::mount_static(const std::filesystem::path& dir) {
  if (!impl_->server.set_mount_point("/", dir.string())) {
    throw IoError("cannot serve static files from " + dir.string());
  }
}

int HttpService::bind(const std::string& host, int port) {
  if (port == 0) return impl_->server.bind_to_any_port(host);
  return impl_->server.bind_to_port(host, port) ? port : -1;
}

bool HttpService::listen() { return impl_->server.listen_after_bind(); }

void HttpService::stop() { impl_->server.stop(); }

void HttpService::wait_until_ready() const { impl_->server.wait_until_ready(); }

}  // namespace infgraph
