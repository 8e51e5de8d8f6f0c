#include "ambilex/study/server.h"

#include <cmath>
#include <sstream>
#include <thread>

#include <fmt/format.h>
#include <httplib.h>
#include <json.hpp>

#include "ambilex/corpus/io.h"

namespace ambilex::study {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

void send_json(httplib::Response& res, int status, const ordered_json& body) {
  res.status = status;
  res.set_content(body.dump(), "application/json");
}

void send_error(httplib::Response& res, int status, std::string_view code, const std::string& message,
                ordered_json extra = ordered_json::object()) {
  ordered_json body;
  body["error"] = code;
  body["message"] = message;
  for (auto& [k, v] : extra.items()) body[k] = v;
  send_json(res, status, body);
}

ordered_json trial_json(const TrialSpec& t) {
  ordered_json j;
  j["kind"] = to_string(t.kind);
  if (t.kind == TrialKind::Image) {
    j["image_id"] = t.image_id;
    j["asset_url"] = "/assets/" + t.asset;
  }
  j["duration_ms"] = t.duration_ms;
  if (t.probe_cell) j["probe_cell"] = *t.probe_cell;
  return j;
}

ordered_json session_json(const Session& s, const StudyConfig& config) {
  ordered_json j;
  j["session_id"] = s.session_id;
  j["participant_id"] = s.participant_id;
  j["category"] = corpus::to_string(s.category);
  j["duration_ms"] = s.duration_ms;
  j["trial_count"] = s.trial_plan.size();
  j["cursor"] = s.cursor;
  j["status"] = to_string(s.status);
  j["grid_rows"] = config.grid_rows;
  j["grid_cols"] = config.grid_cols;
  if (s.vigilance_passed) j["vigilance_passed"] = *s.vigilance_passed;
  return j;
}

// Parses a request body that must be a JSON object; empty body counts as {}.
std::optional<json> body_object(const httplib::Request& req, httplib::Response& res) {
  if (req.body.empty()) return json::object();
  json j = json::parse(req.body, nullptr, false);
  if (j.is_discarded() || !j.is_object()) {
    send_error(res, 400, "InvalidPayload", "request body must be a JSON object");
    return std::nullopt;
  }
  return j;
}

TrialPayload parse_payload(const json& j) {
  TrialPayload p;
  if (auto it = j.find("description"); it != j.end() && !it->is_null()) {
    if (!it->is_string()) throw InvalidPayload("description must be a string");
    p.description = it->get<std::string>();
  }
  if (auto it = j.find("cell_clicked"); it != j.end() && !it->is_null()) {
    if (!it->is_number_integer()) throw InvalidPayload("cell_clicked must be an integer");
    p.cell_clicked = it->get<int>();
  }
  if (auto it = j.find("measured_exposure_ms"); it != j.end() && !it->is_null()) {
    if (!it->is_number()) throw InvalidPayload("measured_exposure_ms must be a number");
    p.measured_exposure_ms = static_cast<std::int64_t>(std::llround(it->get<double>()));
  }
  return p;
}

// Maps service exceptions onto status codes; anything else becomes a 500.
template <class F>
void guarded(httplib::Response& res, F&& f) {
  try {
    f();
  } catch (const UnknownSession& e) {
    send_error(res, 404, "UnknownSession", e.what());
  } catch (const SessionNotActive& e) {
    send_error(res, 409, "SessionNotActive", e.what());
  } catch (const OutOfOrderSubmission& e) {
    send_error(res, 409, "OutOfOrderSubmission", e.what(), {{"expected_index", e.expected()}});
  } catch (const DuplicateSubmission& e) {
    send_error(res, 409, "DuplicateSubmission", e.what());
  } catch (const InvalidPayload& e) {
    send_error(res, 400, "InvalidPayload", e.what());
  } catch (const CategoryExhausted& e) {
    send_error(res, 409, "CategoryExhausted", e.what());
  } catch (const std::exception& e) {
    send_error(res, 500, "InternalError", e.what());
  }
}

}  // namespace

struct StudyServer::Impl {
  StudyService& service;
  ServerOptions options;
  httplib::Server http;
  int port = 0;
  std::thread thread;

  Impl(StudyService& s, ServerOptions o) : service(s), options(std::move(o)) {}

  void routes() {
    const std::string origin = options.allowed_origin;
    http.set_post_routing_handler([origin](const httplib::Request&, httplib::Response& res) {
      res.set_header("Access-Control-Allow-Origin", origin);
      res.set_header("Access-Control-Allow-Methods", "GET, POST, OPTIONS");
      res.set_header("Access-Control-Allow-Headers", "Content-Type");
    });
    http.Options(R"(/api/.*)", [](const httplib::Request&, httplib::Response& res) { res.status = 204; });

    http.Post("/api/sessions", [this](const httplib::Request& req, httplib::Response& res) {
      auto body = body_object(req, res);
      if (!body) return;
      guarded(res, [&] {
        auto it = body->find("participant_id");
        if (it == body->end() || !it->is_string()) throw InvalidPayload("participant_id must be a string");
        const Session s = service.create_session(it->get<std::string>());
        send_json(res, 201, session_json(s, service.config()));
      });
    });

    http.Get("/api/sessions/:id", [this](const httplib::Request& req, httplib::Response& res) {
      guarded(res, [&] {
        const auto& id = req.path_params.at("id");
        auto s = service.session(id);
        if (!s) throw UnknownSession(id);
        send_json(res, 200, session_json(*s, service.config()));
      });
    });

    http.Get("/api/sessions/:id/next", [this](const httplib::Request& req, httplib::Response& res) {
      guarded(res, [&] {
        const auto& id = req.path_params.at("id");
        const NextTrial next = service.next_trial(id);
        ordered_json j;
        j["session_id"] = id;
        j["trial_index"] = next.trial_index;
        j["trial_count"] = next.trial_count;
        j["complete"] = next.complete();
        if (next.trial) j["trial"] = trial_json(*next.trial);
        send_json(res, 200, j);
      });
    });

    http.Post("/api/sessions/:id/trials/:index", [this](const httplib::Request& req, httplib::Response& res) {
      auto body = body_object(req, res);
      if (!body) return;
      guarded(res, [&] {
        const auto& id = req.path_params.at("id");
        const auto& index_text = req.path_params.at("index");
        int index = 0;
        try {
          std::size_t used = 0;
          index = std::stoi(index_text, &used);
          if (used != index_text.size()) throw std::invalid_argument(index_text);
        } catch (const std::logic_error&) {
          throw InvalidPayload(fmt::format("trial index '{}' is not an integer", index_text));
        }
        const SubmitAck ack = service.submit_trial(id, index, parse_payload(*body));
        ordered_json j;
        j["session_id"] = ack.session_id;
        j["trial_index"] = ack.trial_index;
        j["cursor"] = ack.cursor;
        j["status"] = to_string(ack.status);
        if (ack.vigilance_passed) j["vigilance_passed"] = *ack.vigilance_passed;
        send_json(res, 200, j);
      });
    });

    http.Post("/api/sessions/:id/abandon", [this](const httplib::Request& req, httplib::Response& res) {
      guarded(res, [&] {
        const auto& id = req.path_params.at("id");
        service.abandon_session(id);
        send_json(res, 200, session_json(*service.session(id), service.config()));
      });
    });

    http.Get("/api/export", [this](const httplib::Request&, httplib::Response& res) {
      guarded(res, [&] {
        std::ostringstream out;
        corpus::write_responses(out, service.export_records());
        res.status = 200;
        res.set_content(out.str(), "application/x-ndjson");
      });
    });

    if (options.assets_dir) {
      if (!http.set_mount_point("/assets", options.assets_dir->string())) {
        throw IoError(*options.assets_dir, "cannot serve asset directory");
      }
    }
  }
};

StudyServer::StudyServer(StudyService& service, ServerOptions options)
    : impl_(std::make_unique<Impl>(service, std::move(options))) {
  impl_->routes();
  // httplib's default adds SO_REUSEPORT, which lets two servers share a port.
  impl_->http.set_socket_options([](socket_t sock) {
    int yes = 1;
    setsockopt(sock, SOL_SOCKET, SO_REUSEADDR, &yes, sizeof(yes));
  });
  const auto& o = impl_->options;
  if (o.port == 0) {
    impl_->port = impl_->http.bind_to_any_port(o.host);
  } else {
    impl_->port = impl_->http.bind_to_port(o.host, o.port) ? o.port : -1;
  }
  if (impl_->port < 0) throw IoError(fmt::format("{}:{}", o.host, o.port), "cannot bind");
}

StudyServer::~StudyServer() { stop(); }

int StudyServer::port() const { return impl_->port; }

void StudyServer::run() { impl_->http.listen_after_bind(); }

void StudyServer::start() {
  impl_->thread = std::thread([this] { impl_->http.listen_after_bind(); });
  impl_->http.wait_until_ready();
}

void StudyServer::stop() {
  impl_->http.stop();
  if (impl_->thread.joinable()) impl_->thread.join();
}

}  // namespace ambilex::study
