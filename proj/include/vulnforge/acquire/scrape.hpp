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

#include <string>
#include <vector>

#include "vulnforge/acquire/fetcher.hpp"
#include "vulnforge/acquire/policy.hpp"
#include "vulnforge/core/types.hpp"

namespace vulnforge::acquire {

struct ScrapeOutcome {
  std::vector<Paragraph> paragraphs;  // `raw` filled, `cleaned` empty
  std::vector<std::string> warnings;
};

// Paragraphs of one page, already truncated to the policy cap. Returns an
// empty list (and a warning) for any page that must be skipped.
ScrapeOutcome scrape_page(const std::string& url, const FetchPolicy& policy, PageFetcher& fetcher);

// Scrapes every reference of `rec` in reference order. Failing pages are
// skipped with a warning and never abort the record.
ScrapeOutcome scrape_references(const VulnRecord& rec, const FetchPolicy& policy,
                                PageFetcher& fetcher);

struct RecordParagraphs {
  std::string cve_id;
  std::vector<Paragraph> paragraphs;
};

// Scrapes all records with up to max_concurrent_fetches pages in flight.
// The output order is (record, url, index) regardless of completion order.
std::vector<RecordParagraphs> scrape_all(const std::vector<VulnRecord>& records,
                                         const FetchPolicy& policy, PageFetcher& fetcher,
                                         std::vector<std::string>* warnings = nullptr);

// paragraphs.jsonl: one {"cve_id", "source_url", "index", "raw", "cleaned",
// "word_count"} object per line.
void write_paragraphs(const std::string& path, const std::vector<RecordParagraphs>& data);
std::vector<RecordParagraphs> read_paragraphs(const std::string& path);

}  // namespace vulnforge::acquire
