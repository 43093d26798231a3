// Copyright 2026 The vulnforge Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "vulnforge/annotate/server.hpp"

#include <cstdlib>
#include <thread>

#include <httplib.h>

#include "vulnforge/core/error.hpp"

namespace vulnforge::annotate {
namespace {

void send_json(httplib::Response& res, int status, const nlohmann::json& body) {
  res.status = status;
  res.set_content(body.dump(), "application/json");
}

void send_error(httplib::Response& res, int status, const std::string& message) {
  send_json(res, status, {{"error", message}});
}

template <typename F>
void guarded(httplib::Response& res, F&& body) {
  try {
    body();
  } catch (const NotFoundError& e) {
    send_error(res, 404, e.what());
  } catch (const ValidationError& e) {
    send_error(res, 422, e.what());
  } catch (const nlohmann::json::exception& e) {
    send_error(res, 400, std::string("malformed request: ") + e.what());
  } catch (const std::exception& e) {
    send_error(res, 500, e.what());
  }
}

}  // namespace

std::optional<std::string> token_from_env() {
  const char* t = std::getenv("VULNFORGE_TOKEN");
  if (t == nullptr || *t == '\0') return std::nullopt;
  return std::string(t);
}

struct AnnotationServer::Impl {
  AnnotationService& service;
  ServerOptions options;
  httplib::Server server;
  std::thread thread;
  int port = 0;

  Impl(AnnotationService& s, ServerOptions o) : service(s), options(std::move(o)) { routes(); }

  void routes() {
    server.set_pre_routing_handler([this](const httplib::Request& req, httplib::Response& res) {
      if (!options.token || req.path.rfind("/api/", 0) != 0) return httplib::Server::HandlerResponse::Unhandled;
      if (req.get_header_value("Authorization") == "Bearer " + *options.token) {
        return httplib::Server::HandlerResponse::Unhandled;
      }
      send_error(res, 401, "missing or invalid bearer token");
      return httplib::Server::HandlerResponse::Handled;
    });

    server.Get("/api/samples", [this](const httplib::Request& req, httplib::Response& res) {
      guarded(res, [&] {
        auto status = SampleStatus::kAny;
        if (req.has_param("status")) {
          const auto s = req.get_param_value("status");
          if (s == "unlabeled") {
            status = SampleStatus::kUnlabeled;
          } else if (s == "ungraded") {
            status = SampleStatus::kUngraded;
          } else {
            throw ValidationError("status must be unlabeled or ungraded");
          }
        }
        std::optional<std::size_t> limit;
        if (req.has_param("limit")) {
          const auto text = req.get_param_value("limit");
          if (text.empty() || text.find_first_not_of("0123456789") != std::string::npos) {
            throw ValidationError("limit must be a non-negative integer");
          }
          limit = std::stoul(text);
        }
        send_json(res, 200, {{"ids", service.list(status, limit)}});
      });
    });

    server.Get(R"(/api/samples/([^/]+))", [this](const httplib::Request& req, httplib::Response& res) {
      guarded(res, [&] { send_json(res, 200, service.get(req.matches[1])); });
    });

    server.Put(R"(/api/samples/([^/]+)/label)", [this](const httplib::Request& req, httplib::Response& res) {
      guarded(res, [&] {
        const auto body = nlohmann::json::parse(req.body);
        const auto rec = service.put_label(req.matches[1], body.at("summary").get<std::string>(),
                                           body.at("annotator_id").get<std::string>());
        send_json(res, 200, rec);
      });
    });

    server.Put(R"(/api/samples/([^/]+)/grades)", [this](const httplib::Request& req, httplib::Response& res) {
      guarded(res, [&] {
        const auto grade = nlohmann::json::parse(req.body).get<GradeRecord>();
        send_json(res, 200, service.put_grades(req.matches[1], grade));
      });
    });

    server.Put(R"(/api/samples/([^/]+)/study)", [this](const httplib::Request& req, httplib::Response& res) {
      guarded(res, [&] {
        const auto study = nlohmann::json::parse(req.body).get<StudyRecord>();
        send_json(res, 200, service.put_study(req.matches[1], study));
      });
    });

    server.Get("/api/aggregates", [this](const httplib::Request&, httplib::Response& res) {
      guarded(res, [&] { send_json(res, 200, service.aggregates()); });
    });

    if (options.static_dir && !server.set_mount_point("/", *options.static_dir)) {
      throw NotFoundError("static directory not found: " + *options.static_dir);
    }
  }

  void bind() {
    if (options.port == 0) {
      port = server.bind_to_any_port(options.host);
    } else if (server.bind_to_port(options.host, options.port)) {
      port = options.port;
    } else {
      port = -1;
    }
    if (port < 0) throw TransportError("cannot bind " + options.host + ":" + std::to_string(options.port));
  }
};

AnnotationServer::AnnotationServer(AnnotationService& service, ServerOptions options)
    : impl_(std::make_unique<Impl>(service, std::move(options))) {}

AnnotationServer::~AnnotationServer() { stop(); }

int AnnotationServer::start() {
  impl_->bind();
  impl_->thread = std::thread([this] { impl_->server.listen_after_bind(); });
  impl_->server.wait_until_ready();
  return impl_->port;
}

void AnnotationServer::run() {
  impl_->bind();
  impl_->server.listen_after_bind();
}

void AnnotationServer::stop() {
  if (!impl_) return;
  impl_->server.stop();
  if (impl_->thread.joinable()) impl_->thread.join();
}

}  // namespace vulnforge::annotate
