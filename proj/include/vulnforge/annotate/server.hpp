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

#pragma once

#include <memory>
#include <optional>
#include <string>

#include "vulnforge/annotate/service.hpp"

namespace vulnforge::annotate {

struct ServerOptions {
  std::string host = "127.0.0.1";
  int port = 8080;  // 0 picks a free port
  // Required as "Authorization: Bearer <token>" on /api routes when set.
  std::optional<std::string> token;
  // Directory served at "/" (the UI bundle), if any.
  std::optional<std::string> static_dir;
};

// Reads the bearer token from VULNFORGE_TOKEN, if set.
std::optional<std::string> token_from_env();

// JSON API over an AnnotationService:
//   GET /api/samples?status=unlabeled|ungraded&limit=N
//   GET /api/samples/{id}
//   PUT /api/samples/{id}/label    {"summary", "annotator_id"}
//   PUT /api/samples/{id}/grades   GradeRecord
//   PUT /api/samples/{id}/study    StudyRecord
//   GET /api/aggregates
// Errors are {"error": message} with 400 (bad JSON), 401, 404 or 422.
class AnnotationServer {
 public:
  AnnotationServer(AnnotationService& service, ServerOptions options);
  ~AnnotationServer();
  AnnotationServer(const AnnotationServer&) = delete;
  AnnotationServer& operator=(const AnnotationServer&) = delete;

  // Binds and serves on a background thread; returns the bound port.
  int start();
  // Binds and serves on the calling thread until stop().
  void run();
  void stop();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace vulnforge::annotate
