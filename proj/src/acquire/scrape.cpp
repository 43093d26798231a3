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

#include "vulnforge/acquire/scrape.hpp"

#include <algorithm>
#include <atomic>
#include <fstream>
#include <thread>

#include "vulnforge/acquire/html.hpp"
#include "vulnforge/core/error.hpp"

namespace vulnforge::acquire {
namespace {

bool is_html(const std::string& content_type) {
  if (content_type.empty()) return true;
  std::string ct = content_type;
  std::transform(ct.begin(), ct.end(), ct.begin(), [](unsigned char c) { return std::tolower(c); });
  return ct.find("text/html") != std::string::npos ||
         ct.find("application/xhtml+xml") != std::string::npos;
}

bool has_https_scheme(const std::string& url) {
  if (url.size() < 8) return false;
  std::string prefix = url.substr(0, 8);
  std::transform(prefix.begin(), prefix.end(), prefix.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  return prefix == "https://";
}

}  // namespace

ScrapeOutcome scrape_page(const std::string& url, const FetchPolicy& policy, PageFetcher& fetcher) {
  ScrapeOutcome out;
  if (policy.require_valid_tls && !has_https_scheme(url)) {
    out.warnings.push_back(url + ": skipped, no TLS");
    return out;
  }
  const auto page = fetcher.fetch(url);
  if (page.status != FetchStatus::kOk) {
    out.warnings.push_back(url + ": skipped, " + to_string(page.status) +
                           (page.detail.empty() ? "" : " (" + page.detail + ")"));
    return out;
  }
  if (page.body.size() > policy.max_body_bytes) {
    out.warnings.push_back(url + ": skipped, body exceeds cap");
    return out;
  }
  if (!is_html(page.content_type)) {
    out.warnings.push_back(url + ": skipped, content type " + page.content_type);
    return out;
  }
  const auto texts = extract_paragraphs(page.body, policy.max_paragraphs_per_page);
  out.paragraphs.reserve(texts.size());
  for (std::size_t i = 0; i < texts.size(); ++i) {
    out.paragraphs.push_back(Paragraph{url, i, texts[i], "", 0});
  }
  return out;
}

ScrapeOutcome scrape_references(const VulnRecord& rec, const FetchPolicy& policy,
                                PageFetcher& fetcher) {
  ScrapeOutcome out;
  for (const auto& url : rec.references) {
    auto page = scrape_page(url, policy, fetcher);
    std::move(page.paragraphs.begin(), page.paragraphs.end(), std::back_inserter(out.paragraphs));
    for (auto& w : page.warnings) out.warnings.push_back(rec.cve_id + ": " + w);
  }
  return out;
}

std::vector<RecordParagraphs> scrape_all(const std::vector<VulnRecord>& records,
                                         const FetchPolicy& policy, PageFetcher& fetcher,
                                         std::vector<std::string>* warnings) {
  policy.validate();
  struct Task {
    std::size_t record;
    std::size_t ref;
  };
  std::vector<Task> tasks;
  for (std::size_t r = 0; r < records.size(); ++r) {
    for (std::size_t u = 0; u < records[r].references.size(); ++u) tasks.push_back({r, u});
  }
  std::vector<ScrapeOutcome> results(tasks.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (auto t = next.fetch_add(1); t < tasks.size(); t = next.fetch_add(1)) {
      const auto& rec = records[tasks[t].record];
      results[t] = scrape_page(rec.references[tasks[t].ref], policy, fetcher);
    }
  };
  const auto n_threads = std::min(policy.max_concurrent_fetches, std::max<std::size_t>(tasks.size(), 1));
  if (n_threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t i = 0; i < n_threads; ++i) pool.emplace_back(worker);
  }

  std::vector<RecordParagraphs> out;
  out.reserve(records.size());
  for (const auto& rec : records) out.push_back({rec.cve_id, {}});
  for (std::size_t t = 0; t < tasks.size(); ++t) {
    auto& dst = out[tasks[t].record].paragraphs;
    std::move(results[t].paragraphs.begin(), results[t].paragraphs.end(), std::back_inserter(dst));
    if (warnings) {
      for (auto& w : results[t].warnings) {
        warnings->push_back(records[tasks[t].record].cve_id + ": " + w);
      }
    }
  }
  return out;
}

void write_paragraphs(const std::string& path, const std::vector<RecordParagraphs>& data) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path);
  for (const auto& rec : data) {
    for (const auto& p : rec.paragraphs) {
      nlohmann::json j = p;
      j["cve_id"] = rec.cve_id;
      out << j.dump() << '\n';
    }
  }
}

std::vector<RecordParagraphs> read_paragraphs(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw NotFoundError("cannot read " + path);
  std::vector<RecordParagraphs> out;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto j = nlohmann::json::parse(line);
    const auto id = j.at("cve_id").get<std::string>();
    if (out.empty() || out.back().cve_id != id) out.push_back({id, {}});
    out.back().paragraphs.push_back(j.get<Paragraph>());
  }
  return out;
}

}  // namespace vulnforge::acquire
