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

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

namespace vulnforge {

// One CVE entry as retrieved from the feed.
struct VulnRecord {
  std::string cve_id;
  std::string description;
  int published_year = 0;
  std::vector<std::string> references;

  bool operator==(const VulnRecord&) const = default;
};

// Text of a single <p> element scraped from a reference page.
struct Paragraph {
  std::string source_url;
  std::size_t index = 0;  // position among the page's <p> elements
  std::string raw;
  std::string cleaned;
  std::size_t word_count = 0;  // whitespace tokens of `cleaned`

  bool operator==(const Paragraph&) const = default;
};

// Provenance for one paragraph folded into an augmented text.
struct SourceRef {
  std::string url;
  std::size_t paragraph_index = 0;
  std::map<std::string, double> scores;  // encoder id -> cosine

  bool operator==(const SourceRef&) const = default;
};

// Human-metric grades for a generated summary, each on a 1..3 scale.
struct GradeRecord {
  int fluency = 0;
  int completeness = 0;
  int correctness = 0;
  int understanding = 0;
  std::string grader_id;
  std::string graded_at;

  bool operator==(const GradeRecord&) const = default;
};

// User-study ratings comparing an enriched description with the original.
struct StudyRecord {
  int enrichment = 0;
  int accuracy = 0;
  int understanding = 0;
  std::string evaluator_id;

  bool operator==(const StudyRecord&) const = default;
};

struct AugmentedInstance {
  std::string cve_id;
  std::string description;     // target y
  std::string augmented_text;  // input x
  std::vector<SourceRef> sources;
  std::optional<std::string> label;
  std::vector<GradeRecord> grades;
  // Model output attached by `vulnforge export --with-generations`.
  std::optional<std::string> generated;

  bool operator==(const AugmentedInstance&) const = default;
};

struct SingleGate {
  std::string encoder_id;
  double lo = 0.0;
  double hi = 0.0;

  bool operator==(const SingleGate&) const = default;
};

// Agreement rule over the "use" and "mpnet" encoder roles.
struct DualGate {
  double use_lo = 0.50;
  double use_hi = 0.90;
  double mpnet_lo = 0.70;
  double mpnet_hi = 0.90;
  double max_diff = 0.20;

  bool operator==(const DualGate&) const = default;
};

// Similarity gate configuration. Scores above `ceiling` are always rejected
// as near-copies of the description.
struct GatePolicy {
  std::variant<SingleGate, DualGate> mode;
  double ceiling = 0.90;

  static GatePolicy single_use();
  static GatePolicy single_mpnet();
  static GatePolicy dual();

  bool is_dual() const { return std::holds_alternative<DualGate>(mode); }
  bool operator==(const GatePolicy&) const = default;
};

inline constexpr const char* kUseRole = "use";
inline constexpr const char* kMpnetRole = "mpnet";

enum class Stage { kRaw, kRefined, kRefinedCapped };

const char* to_string(Stage stage);
Stage stage_from_string(const std::string& name);
// Forward only along raw -> refined -> refined_capped.
bool stage_transition_allowed(Stage from, Stage to);

bool is_valid_cve_id(const std::string& id);
std::size_t count_words(const std::string& text);

void to_json(nlohmann::json& j, const VulnRecord& r);
void from_json(const nlohmann::json& j, VulnRecord& r);
void to_json(nlohmann::json& j, const Paragraph& p);
void from_json(const nlohmann::json& j, Paragraph& p);
void to_json(nlohmann::json& j, const SourceRef& s);
void from_json(const nlohmann::json& j, SourceRef& s);
void to_json(nlohmann::json& j, const GradeRecord& g);
void from_json(const nlohmann::json& j, GradeRecord& g);
void to_json(nlohmann::json& j, const StudyRecord& s);
void from_json(const nlohmann::json& j, StudyRecord& s);
void to_json(nlohmann::json& j, const AugmentedInstance& a);
void from_json(const nlohmann::json& j, AugmentedInstance& a);
void to_json(nlohmann::json& j, const GatePolicy& p);
void from_json(const nlohmann::json& j, GatePolicy& p);

}  // namespace vulnforge
