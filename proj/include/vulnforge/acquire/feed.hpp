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
#include <string_view>
#include <vector>

#include "vulnforge/acquire/policy.hpp"
#include "vulnforge/core/types.hpp"

namespace vulnforge::acquire {

// Parses a CVE JSON feed and keeps records published inside the policy's
// year window, in feed order with reference order preserved.
//
// Accepted layouts:
//   * NVD 1.1 data feeds: {"CVE_data_version": "4.0", "CVE_Items": [...]}
//   * NVD CVE API 2.0:    {"format": "NVD_CVE", "version": "2.0",
//                          "vulnerabilities": [{"cve": {...}}]}
//
// Throws FeedParseError (with byte offset) on malformed JSON,
// UnsupportedSchemaError on any other layout or version, and
// DuplicateIdError when a cve_id repeats. Entries without an English
// description are skipped and reported through `warnings`.
std::vector<VulnRecord> ingest_feed(std::string_view feed_bytes, const FetchPolicy& policy,
                                    std::vector<std::string>* warnings = nullptr);

void write_records(const std::string& path, const std::vector<VulnRecord>& records);
std::vector<VulnRecord> read_records(const std::string& path);

}  // namespace vulnforge::acquire
