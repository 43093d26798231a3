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

#include "vulnforge/acquire/feed.hpp"

#include <fstream>
#include <set>

#include "vulnforge/core/error.hpp"

namespace vulnforge::acquire {

void FetchPolicy::validate() const {
  if (year_lo > year_hi) throw ValidationError("year_lo must not exceed year_hi");
  if (max_paragraphs_per_page < 1) throw ValidationError("max_paragraphs_per_page must be >= 1");
  if (timeout_ms <= 0) throw ValidationError("timeout_ms must be positive");
  if (max_concurrent_fetches < 1) throw ValidationError("max_concurrent_fetches must be >= 1");
}

namespace {

using nlohmann::json;

int year_of(const std::string& date) {
  if (date.size() < 4) throw ValidationError("bad publication date: " + date);
  return std::stoi(date.substr(0, 4));
}

std::string english_value(const json& items, const char* key) {
  std::string fallback;
  for (const auto& d : items) {
    const auto value = d.value(key, std::string{});
    if (d.value("lang", std::string{}) == "en") return value;
    if (fallback.empty()) fallback = value;
  }
  return fallback;
}

VulnRecord from_nvd11(const json& item) {
  const auto& cve = item.at("cve");
  VulnRecord r;
  r.cve_id = cve.at("CVE_data_meta").at("ID").get<std::string>();
  r.description = english_value(cve.at("description").at("description_data"), "value");
  r.published_year = year_of(item.at("publishedDate").get<std::string>());
  if (cve.contains("references")) {
    for (const auto& ref : cve["references"].value("reference_data", json::array())) {
      r.references.push_back(ref.at("url").get<std::string>());
    }
  }
  return r;
}

VulnRecord from_api20(const json& item) {
  const auto& cve = item.at("cve");
  VulnRecord r;
  r.cve_id = cve.at("id").get<std::string>();
  r.description = english_value(cve.value("descriptions", json::array()), "value");
  r.published_year = year_of(cve.at("published").get<std::string>());
  for (const auto& ref : cve.value("references", json::array())) {
    r.references.push_back(ref.at("url").get<std::string>());
  }
  return r;
}

}  // namespace

std::vector<VulnRecord> ingest_feed(std::string_view feed_bytes, const FetchPolicy& policy,
                                    std::vector<std::string>* warnings) {
  policy.validate();
  json doc;
  try {
    doc = json::parse(feed_bytes.begin(), feed_bytes.end());
  } catch (const json::parse_error& e) {
    throw FeedParseError(std::string("malformed feed JSON: ") + e.what(), e.byte);
  }
  if (!doc.is_object()) throw UnsupportedSchemaError("feed root must be an object");

  const json* items = nullptr;
  VulnRecord (*convert)(const json&) = nullptr;
  if (doc.contains("CVE_Items")) {
    const auto version = doc.value("CVE_data_version", std::string{});
    if (version != "4.0") throw UnsupportedSchemaError("unsupported CVE_data_version: " + version);
    items = &doc["CVE_Items"];
    convert = &from_nvd11;
  } else if (doc.contains("vulnerabilities")) {
    const auto version = doc.value("version", std::string{});
    if (doc.value("format", std::string{}) != "NVD_CVE" || version != "2.0") {
      throw UnsupportedSchemaError("unsupported NVD API feed version: " + version);
    }
    items = &doc["vulnerabilities"];
    convert = &from_api20;
  } else {
    throw UnsupportedSchemaError("unrecognised feed layout");
  }
  if (!items->is_array()) throw UnsupportedSchemaError("feed item list is not an array");

  std::vector<VulnRecord> out;
  std::set<std::string> seen;
  for (const auto& item : *items) {
    VulnRecord r;
    try {
      r = convert(item);
    } catch (const json::exception& e) {
      throw UnsupportedSchemaError(std::string("feed entry does not match schema: ") + e.what());
    }
    if (!seen.insert(r.cve_id).second) throw DuplicateIdError(r.cve_id);
    if (r.published_year < policy.year_lo || r.published_year > policy.year_hi) continue;
    if (r.description.empty()) {
      if (warnings) warnings->push_back(r.cve_id + ": no description, skipped");
      continue;
    }
    out.push_back(std::move(r));
  }
  return out;
}

void write_records(const std::string& path, const std::vector<VulnRecord>& records) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path);
  for (const auto& r : records) out << json(r).dump() << '\n';
}

std::vector<VulnRecord> read_records(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw NotFoundError("cannot read " + path);
  std::vector<VulnRecord> out;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty()) out.push_back(json::parse(line).get<VulnRecord>());
  }
  return out;
}

}  // namespace vulnforge::acquire
