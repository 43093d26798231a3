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

#include "vulnforge/acquire/fetcher.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "vulnforge/core/error.hpp"

namespace vulnforge::acquire {

const char* to_string(FetchStatus status) {
  switch (status) {
    case FetchStatus::kOk:
      return "ok";
    case FetchStatus::kTlsError:
      return "tls_error";
    case FetchStatus::kNetworkError:
      return "network_error";
    case FetchStatus::kTimeout:
      return "timeout";
    case FetchStatus::kHttpError:
      return "http_error";
    case FetchStatus::kTooLarge:
      return "too_large";
  }
  return "network_error";
}

namespace {

FetchStatus status_from_string(const std::string& s) {
  if (s == "ok") return FetchStatus::kOk;
  if (s == "tls_error") return FetchStatus::kTlsError;
  if (s == "timeout") return FetchStatus::kTimeout;
  if (s == "network_error") return FetchStatus::kNetworkError;
  if (s == "http_error") return FetchStatus::kHttpError;
  throw ValidationError("unknown fixture status: " + s);
}

}  // namespace

FixtureFetcher::FixtureFetcher(std::filesystem::path dir) : dir_(std::move(dir)) {
  const auto index_path = dir_ / "fixtures.json";
  std::ifstream in(index_path);
  if (!in) throw NotFoundError("missing fixture index " + index_path.string());
  const auto doc = nlohmann::json::parse(in);
  for (const auto& [url, value] : doc.at("pages").items()) {
    Entry e{"", "text/html", FetchStatus::kOk};
    if (value.is_string()) {
      e.file = value.get<std::string>();
    } else {
      e.file = value.value("file", std::string{});
      e.content_type = value.value("content_type", e.content_type);
      e.status = status_from_string(value.value("status", std::string("ok")));
    }
    index_.emplace(url, std::move(e));
  }
}

FetchResult FixtureFetcher::fetch(const std::string& url) {
  auto it = index_.find(url);
  if (it == index_.end()) return {FetchStatus::kNetworkError, "", "", "no fixture for " + url};
  const auto& e = it->second;
  if (e.status != FetchStatus::kOk) return {e.status, "", e.content_type, "fixture status"};
  std::ifstream in(dir_ / e.file, std::ios::binary);
  if (!in) return {FetchStatus::kNetworkError, "", "", "unreadable fixture " + e.file};
  std::ostringstream body;
  body << in.rdbuf();
  return {FetchStatus::kOk, body.str(), e.content_type, ""};
}

std::unique_ptr<PageFetcher> make_fetcher(const std::string& fixture_dir, const FetchPolicy& policy) {
  const char* offline = std::getenv("VULNFORGE_OFFLINE");
  const bool force_offline = offline && std::string(offline) == "1";
  if (!fixture_dir.empty()) return std::make_unique<FixtureFetcher>(fixture_dir);
  if (force_offline) throw ValidationError("VULNFORGE_OFFLINE=1 requires a fixture directory");
  return std::make_unique<LiveFetcher>(policy);
}

}  // namespace vulnforge::acquire
