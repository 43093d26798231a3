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

#include "vulnforge/core/types.hpp"

#include <regex>

#include "vulnforge/core/error.hpp"

namespace vulnforge {

GatePolicy GatePolicy::single_use() { return {SingleGate{kUseRole, 0.60, 0.90}}; }
GatePolicy GatePolicy::single_mpnet() { return {SingleGate{kMpnetRole, 0.70, 0.90}}; }
GatePolicy GatePolicy::dual() { return {DualGate{}}; }

const char* to_string(Stage stage) {
  switch (stage) {
    case Stage::kRaw:
      return "raw";
    case Stage::kRefined:
      return "refined";
    case Stage::kRefinedCapped:
      return "refined_capped";
  }
  return "raw";
}

Stage stage_from_string(const std::string& name) {
  if (name == "raw") return Stage::kRaw;
  if (name == "refined") return Stage::kRefined;
  if (name == "refined_capped") return Stage::kRefinedCapped;
  throw ValidationError("unknown manifest stage: " + name);
}

bool stage_transition_allowed(Stage from, Stage to) {
  return static_cast<int>(to) > static_cast<int>(from);
}

bool is_valid_cve_id(const std::string& id) {
  static const std::regex kPattern(R"(CVE-\d{4}-\d{4,})");
  return std::regex_match(id, kPattern);
}

std::size_t count_words(const std::string& text) {
  std::size_t n = 0;
  bool in_word = false;
  for (unsigned char c : text) {
    const bool space = c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
    if (!space && !in_word) ++n;
    in_word = !space;
  }
  return n;
}

void to_json(nlohmann::json& j, const VulnRecord& r) {
  j = {{"cve_id", r.cve_id},
       {"description", r.description},
       {"published_year", r.published_year},
       {"references", r.references}};
}

void from_json(const nlohmann::json& j, VulnRecord& r) {
  j.at("cve_id").get_to(r.cve_id);
  j.at("description").get_to(r.description);
  j.at("published_year").get_to(r.published_year);
  r.references = j.value("references", std::vector<std::string>{});
}

void to_json(nlohmann::json& j, const Paragraph& p) {
  j = {{"source_url", p.source_url},
       {"index", p.index},
       {"raw", p.raw},
       {"cleaned", p.cleaned},
       {"word_count", p.word_count}};
}

void from_json(const nlohmann::json& j, Paragraph& p) {
  j.at("source_url").get_to(p.source_url);
  j.at("index").get_to(p.index);
  j.at("raw").get_to(p.raw);
  p.cleaned = j.value("cleaned", std::string{});
  p.word_count = j.value("word_count", std::size_t{0});
}

void to_json(nlohmann::json& j, const SourceRef& s) {
  j = {{"url", s.url}, {"paragraph_index", s.paragraph_index}, {"scores", s.scores}};
}

void from_json(const nlohmann::json& j, SourceRef& s) {
  j.at("url").get_to(s.url);
  j.at("paragraph_index").get_to(s.paragraph_index);
  j.at("scores").get_to(s.scores);
}

void to_json(nlohmann::json& j, const GradeRecord& g) {
  j = {{"fluency", g.fluency},
       {"completeness", g.completeness},
       {"correctness", g.correctness},
       {"understanding", g.understanding},
       {"grader_id", g.grader_id},
       {"graded_at", g.graded_at}};
}

void from_json(const nlohmann::json& j, GradeRecord& g) {
  j.at("fluency").get_to(g.fluency);
  j.at("completeness").get_to(g.completeness);
  j.at("correctness").get_to(g.correctness);
  j.at("understanding").get_to(g.understanding);
  g.grader_id = j.value("grader_id", std::string{});
  g.graded_at = j.value("graded_at", std::string{});
}

void to_json(nlohmann::json& j, const StudyRecord& s) {
  j = {{"enrichment", s.enrichment},
       {"accuracy", s.accuracy},
       {"understanding", s.understanding},
       {"evaluator_id", s.evaluator_id}};
}

void from_json(const nlohmann::json& j, StudyRecord& s) {
  j.at("enrichment").get_to(s.enrichment);
  j.at("accuracy").get_to(s.accuracy);
  j.at("understanding").get_to(s.understanding);
  s.evaluator_id = j.value("evaluator_id", std::string{});
}

void to_json(nlohmann::json& j, const AugmentedInstance& a) {
  j = {{"cve_id", a.cve_id},
       {"description", a.description},
       {"augmented_text", a.augmented_text},
       {"sources", a.sources}};
  if (a.label) j["label"] = *a.label;
  if (!a.grades.empty()) j["grades"] = a.grades;
  if (a.generated) j["generated"] = *a.generated;
}

void from_json(const nlohmann::json& j, AugmentedInstance& a) {
  j.at("cve_id").get_to(a.cve_id);
  j.at("description").get_to(a.description);
  j.at("augmented_text").get_to(a.augmented_text);
  a.sources = j.value("sources", std::vector<SourceRef>{});
  a.label.reset();
  if (j.contains("label")) a.label = j.at("label").get<std::string>();
  a.grades = j.value("grades", std::vector<GradeRecord>{});
  a.generated.reset();
  if (j.contains("generated")) a.generated = j.at("generated").get<std::string>();
}

void to_json(nlohmann::json& j, const GatePolicy& p) {
  if (const auto* s = std::get_if<SingleGate>(&p.mode)) {
    j = {{"mode", "single"}, {"encoder_id", s->encoder_id}, {"lo", s->lo}, {"hi", s->hi}};
  } else {
    const auto& d = std::get<DualGate>(p.mode);
    j = {{"mode", "dual"},
         {"use_lo", d.use_lo},
         {"use_hi", d.use_hi},
         {"mpnet_lo", d.mpnet_lo},
         {"mpnet_hi", d.mpnet_hi},
         {"max_diff", d.max_diff}};
  }
  j["ceiling"] = p.ceiling;
}

void from_json(const nlohmann::json& j, GatePolicy& p) {
  const auto mode = j.at("mode").get<std::string>();
  if (mode == "single") {
    p.mode = SingleGate{j.at("encoder_id").get<std::string>(), j.at("lo").get<double>(),
                        j.at("hi").get<double>()};
  } else if (mode == "dual") {
    DualGate d;
    d.use_lo = j.value("use_lo", d.use_lo);
    d.use_hi = j.value("use_hi", d.use_hi);
    d.mpnet_lo = j.value("mpnet_lo", d.mpnet_lo);
    d.mpnet_hi = j.value("mpnet_hi", d.mpnet_hi);
    d.max_diff = j.value("max_diff", d.max_diff);
    p.mode = d;
  } else {
    throw ValidationError("unknown encoder policy mode: " + mode);
  }
  p.ceiling = j.value("ceiling", 0.90);
}

}  // namespace vulnforge
