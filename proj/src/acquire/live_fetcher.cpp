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

#include <regex>
#include <thread>

#include <httplib.h>

#include "vulnforge/acquire/fetcher.hpp"

namespace vulnforge::acquire {
namespace {

struct UrlParts {
  std::string scheme_host_port;
  std::string host;
  std::string path;
};

bool split_url(const std::string& url, UrlParts& parts) {
  static const std::regex kUrl(R"(^(https?)://([^/?#:]+)(:\d+)?([^#]*))", std::regex::icase);
  std::smatch m;
  if (!std::regex_search(url, m, kUrl)) return false;
  parts.host = m[2].str();
  parts.scheme_host_port = m[1].str() + "://" + m[2].str() + m[3].str();
  parts.path = m[4].str().empty() ? "/" : m[4].str();
  return true;
}

std::string resolve_location(const UrlParts& base, const std::string& location) {
  if (location.rfind("http://", 0) == 0 || location.rfind("https://", 0) == 0) return location;
  if (!location.empty() && location[0] == '/') return base.scheme_host_port + location;
  auto dir = base.path.substr(0, base.path.rfind('/') + 1);
  return base.scheme_host_port + dir + location;
}

}  // namespace

LiveFetcher::LiveFetcher(FetchPolicy policy) : policy_(policy) {}

void LiveFetcher::wait_for_host(const std::string& host) {
  std::chrono::steady_clock::time_point ready;
  {
    std::lock_guard lock(mu_);
    const auto now = std::chrono::steady_clock::now();
    const auto delay = std::chrono::milliseconds(policy_.politeness_delay_ms);
    auto it = last_hit_.find(host);
    ready = it == last_hit_.end() ? now : std::max(now, it->second + delay);
    last_hit_[host] = ready;
  }
  std::this_thread::sleep_until(ready);
}

FetchResult LiveFetcher::fetch(const std::string& original_url) {
  std::string url = original_url;
  for (int hop = 0; hop <= policy_.max_redirects; ++hop) {
    UrlParts parts;
    if (!split_url(url, parts)) return {FetchStatus::kNetworkError, "", "", "unsupported URL " + url};
    wait_for_host(parts.host);

    httplib::Client client(parts.scheme_host_port);
    client.set_follow_location(false);
    const auto timeout = std::chrono::milliseconds(policy_.timeout_ms);
    client.set_connection_timeout(timeout);
    client.set_read_timeout(timeout);
    client.set_write_timeout(timeout);
#ifdef CPPHTTPLIB_OPENSSL_SUPPORT
    client.enable_server_certificate_verification(policy_.require_valid_tls);
#endif

    std::string body;
    bool too_large = false;
    auto res = client.Get(
        parts.path, httplib::Headers{{"User-Agent", "vulnforge/1.0"}},
        [](const httplib::Response&) { return true; },
        [&](const char* data, std::size_t len) {
          if (body.size() + len > policy_.max_body_bytes) {
            too_large = true;
            return false;
          }
          body.append(data, len);
          return true;
        });
    if (too_large) return {FetchStatus::kTooLarge, "", "", "body exceeds cap"};
    if (!res) {
      const auto err = res.error();
      FetchStatus status = FetchStatus::kNetworkError;
      if (err == httplib::Error::SSLServerVerification || err == httplib::Error::SSLConnection ||
          err == httplib::Error::SSLLoadingCerts) {
        status = FetchStatus::kTlsError;
      } else if (err == httplib::Error::ConnectionTimeout || err == httplib::Error::Read) {
        status = FetchStatus::kTimeout;
      }
      return {status, "", "", httplib::to_string(err)};
    }
    if (res->status >= 300 && res->status < 400 && res->has_header("Location")) {
      url = resolve_location(parts, res->get_header_value("Location"));
      continue;
    }
    if (res->status != 200) {
      return {FetchStatus::kHttpError, "", "", "HTTP " + std::to_string(res->status)};
    }
    return {FetchStatus::kOk, std::move(body), res->get_header_value("Content-Type"), ""};
  }
  return {FetchStatus::kNetworkError, "", "", "too many redirects"};
}

}  // namespace vulnforge::acquire
