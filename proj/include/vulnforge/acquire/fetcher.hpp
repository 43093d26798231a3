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

#include <chrono>
#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <string>

#include "vulnforge/acquire/policy.hpp"

namespace vulnforge::acquire {

enum class FetchStatus {
  kOk,
  kTlsError,
  kNetworkError,
  kTimeout,
  kHttpError,
  kTooLarge,
};

const char* to_string(FetchStatus status);

struct FetchResult {
  FetchStatus status = FetchStatus::kOk;
  std::string body;
  std::string content_type;
  std::string detail;
};

// Resolves a URL to page bytes. Implementations must be safe to call from
// several threads at once.
class PageFetcher {
 public:
  virtual ~PageFetcher() = default;
  virtual FetchResult fetch(const std::string& url) = 0;
};

// Serves pages from a directory indexed by `fixtures.json`:
//
//   {"pages": {"<url>": {"file": "a.html",
//                        "content_type": "text/html",   (optional)
//                        "status": "ok|tls_error|timeout|network_error|http_error"}}}
//
// A bare string value is shorthand for {"file": value}. URLs missing from
// the index resolve to a network error.
class FixtureFetcher : public PageFetcher {
 public:
  explicit FixtureFetcher(std::filesystem::path dir);
  FetchResult fetch(const std::string& url) override;

 private:
  struct Entry {
    std::string file;
    std::string content_type;
    FetchStatus status;
  };
  std::filesystem::path dir_;
  std::map<std::string, Entry> index_;
};

// HTTP(S) fetcher with certificate verification, manual redirect following
// (paragraphs stay attributed to the original URL), a body size cap and a
// per-host politeness delay.
class LiveFetcher : public PageFetcher {
 public:
  explicit LiveFetcher(FetchPolicy policy);
  FetchResult fetch(const std::string& url) override;

 private:
  void wait_for_host(const std::string& host);

  FetchPolicy policy_;
  std::mutex mu_;
  std::map<std::string, std::chrono::steady_clock::time_point> last_hit_;
};

// FixtureFetcher when VULNFORGE_OFFLINE=1 or a fixture dir is given,
// LiveFetcher otherwise.
std::unique_ptr<PageFetcher> make_fetcher(const std::string& fixture_dir, const FetchPolicy& policy);

}  // namespace vulnforge::acquire
