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

#include "vulnforge/annotate/service.hpp"

#include <algorithm>
#include <set>

#include "vulnforge/core/error.hpp"
#include "vulnforge/core/rng.hpp"
#include "vulnforge/core/timestamp.hpp"
#include "vulnforge/textprep/sentences.hpp"

namespace vulnforge::annotate {
namespace {

std::string strip_period(std::string s) {
  while (!s.empty() && s.back() == '.') s.pop_back();
  return s;
}

bool in_scale(int v) { return v >= 1 && v <= 3; }

void check_scale(int v, const char* field) {
  if (!in_scale(v)) {
    throw ValidationError(std::string(field) + " must be 1, 2 or 3 (got " + std::to_string(v) + ")");
  }
}

}  // namespace

std::vector<std::string> sample_batch(const std::vector<std::string>& ids, std::size_t n,
                                      std::uint64_t seed) {
  if (n > ids.size()) {
    throw ValidationError("cannot sample " + std::to_string(n) + " of " + std::to_string(ids.size()));
  }
  std::vector<std::string> out = ids;
  Rng rng(seed);
  shuffle(std::span<std::string>(out), rng);
  out.resize(n);
  return out;
}

double extractive_ratio(const std::string& label, const std::string& augmented_text) {
  const auto label_sents = textprep::split_sentences(label);
  if (label_sents.empty()) return 0.0;
  std::set<std::string> source;
  for (auto& s : textprep::split_sentences(augmented_text)) source.insert(strip_period(s));
  std::size_t hits = 0;
  for (const auto& s : label_sents) hits += source.count(strip_period(s));
  return static_cast<double>(hits) / static_cast<double>(label_sents.size());
}

void validate_grade(const GradeRecord& g) {
  check_scale(g.fluency, "fluency");
  check_scale(g.completeness, "completeness");
  check_scale(g.correctness, "correctness");
  check_scale(g.understanding, "understanding");
  if (g.grader_id.empty()) throw ValidationError("grader_id is required");
}

void validate_study(const StudyRecord& s) {
  check_scale(s.enrichment, "enrichment");
  check_scale(s.accuracy, "accuracy");
  check_scale(s.understanding, "understanding");
  if (s.evaluator_id.empty()) throw ValidationError("evaluator_id is required");
}

AnnotationService::AnnotationService(DatasetManifest manifest, std::string ledger_path,
                                     ServiceOptions options)
    : ledger_(std::move(ledger_path)) {
  State state;
  std::vector<std::string> ids;
  std::vector<std::string> gradable;
  for (const auto& inst : manifest.instances()) {
    SampleState s;
    s.instance = inst;
    s.grades = std::move(s.instance.grades);
    s.instance.grades.clear();
    ids.push_back(inst.cve_id);
    if (inst.generated) gradable.push_back(inst.cve_id);
    state.emplace(inst.cve_id, std::move(s));
  }
  label_sample_ = sample_batch(ids, std::min(options.sample_size, ids.size()), options.label_seed);
  grade_sample_ = sample_batch(gradable, std::min(options.sample_size, gradable.size()), options.grade_seed);
  for (const auto& entry : ledger_.read_all()) apply(state, entry);
  state_ = std::make_shared<const State>(std::move(state));
}

void AnnotationService::apply(State& state, const nlohmann::json& entry) const {
  const auto type = entry.at("type").get<std::string>();
  const auto id = entry.at("id").get<std::string>();
  auto it = state.find(id);
  if (it == state.end()) throw NotFoundError("unknown sample " + id);
  auto& s = it->second;
  if (type == "label") {
    auto rec = entry.get<LabelRecord>();
    if (rec.summary.empty()) throw ValidationError("label summary is empty");
    s.instance.label = rec.summary;
    s.labels[rec.annotator_id] = std::move(rec);
  } else if (type == "grades") {
    auto g = entry.at("grade").get<GradeRecord>();
    validate_grade(g);
    if (!s.instance.generated) throw ValidationError("sample " + id + " has no generated summary to grade");
    s.grades.push_back(std::move(g));
  } else if (type == "study") {
    auto st = entry.at("study").get<StudyRecord>();
    validate_study(st);
    s.studies.push_back(std::move(st));
  } else {
    throw ValidationError("unknown ledger entry type: " + type);
  }
}

std::shared_ptr<const AnnotationService::State> AnnotationService::current() const {
  std::lock_guard lock(snapshot_mutex_);
  return state_;
}

void AnnotationService::commit(const nlohmann::json& entry) {
  std::lock_guard writer(write_mutex_);
  auto next = std::make_shared<State>(*current());
  apply(*next, entry);  // validates before anything is persisted
  ledger_.append(entry);
  std::lock_guard lock(snapshot_mutex_);
  state_ = std::move(next);
}

std::vector<std::string> AnnotationService::list(SampleStatus status, std::optional<std::size_t> limit) const {
  const auto state = current();
  std::set<std::string> ids;
  if (status != SampleStatus::kUngraded) {
    for (const auto& id : label_sample_) {
      if (status == SampleStatus::kAny || state->at(id).labels.empty()) ids.insert(id);
    }
  }
  if (status != SampleStatus::kUnlabeled) {
    for (const auto& id : grade_sample_) {
      if (status == SampleStatus::kAny || state->at(id).grades.empty()) ids.insert(id);
    }
  }
  std::vector<std::string> out(ids.begin(), ids.end());
  if (limit && out.size() > *limit) out.resize(*limit);
  return out;
}

SampleState AnnotationService::get(const std::string& id) const {
  const auto state = current();
  auto it = state->find(id);
  if (it == state->end()) throw NotFoundError("unknown sample " + id);
  return it->second;
}

LabelRecord AnnotationService::put_label(const std::string& id, const std::string& summary,
                                         const std::string& annotator_id) {
  const auto sample = get(id);
  if (summary.find_first_not_of(" \t\r\n") == std::string::npos) throw ValidationError("summary is empty");
  if (annotator_id.empty()) throw ValidationError("annotator_id is required");
  LabelRecord rec{summary, annotator_id, extractive_ratio(summary, sample.instance.augmented_text),
                  now_rfc3339()};
  nlohmann::json entry = rec;
  entry["type"] = "label";
  entry["id"] = id;
  commit(entry);
  return rec;
}

GradeRecord AnnotationService::put_grades(const std::string& id, GradeRecord grade) {
  get(id);
  validate_grade(grade);
  if (grade.graded_at.empty()) grade.graded_at = now_rfc3339();
  commit({{"type", "grades"}, {"id", id}, {"grade", grade}});
  return grade;
}

StudyRecord AnnotationService::put_study(const std::string& id, StudyRecord study) {
  get(id);
  validate_study(study);
  commit({{"type", "study"}, {"id", id}, {"study", study}});
  return study;
}

Aggregates AnnotationService::aggregates() const {
  const auto state = current();
  Aggregates a;
  std::map<std::string, double> gsum, ssum;
  for (const auto& [id, s] : *state) {
    if (!s.labels.empty()) ++a.labeled;
    if (!s.grades.empty()) ++a.graded_samples;
    for (const auto& g : s.grades) {
      ++a.grade_count;
      gsum["fluency"] += g.fluency;
      gsum["completeness"] += g.completeness;
      gsum["correctness"] += g.correctness;
      gsum["understanding"] += g.understanding;
    }
    for (const auto& st : s.studies) {
      ++a.study_count;
      ssum["enrichment"] += st.enrichment;
      ssum["accuracy"] += st.accuracy;
      ssum["understanding"] += st.understanding;
    }
  }
  for (const auto& [k, v] : gsum) a.grade_means[k] = v / static_cast<double>(a.grade_count);
  for (const auto& [k, v] : ssum) a.study_means[k] = v / static_cast<double>(a.study_count);
  return a;
}

std::map<std::string, SampleState> AnnotationService::snapshot() const { return *current(); }

void to_json(nlohmann::json& j, const LabelRecord& r) {
  j = {{"summary", r.summary},
       {"annotator_id", r.annotator_id},
       {"extractive_ratio", r.extractive_ratio},
       {"labeled_at", r.labeled_at}};
}

void from_json(const nlohmann::json& j, LabelRecord& r) {
  j.at("summary").get_to(r.summary);
  j.at("annotator_id").get_to(r.annotator_id);
  r.extractive_ratio = j.value("extractive_ratio", 0.0);
  r.labeled_at = j.value("labeled_at", std::string{});
}

void to_json(nlohmann::json& j, const SampleState& s) {
  j = s.instance;
  nlohmann::json labels = nlohmann::json::array();
  for (const auto& [annotator, rec] : s.labels) labels.push_back(rec);
  j["labels"] = std::move(labels);
  j["grades"] = s.grades;
  j["studies"] = s.studies;
}

void to_json(nlohmann::json& j, const Aggregates& a) {
  j = {{"labeled", a.labeled},
       {"graded_samples", a.graded_samples},
       {"grade_count", a.grade_count},
       {"grade_means", a.grade_means},
       {"study_count", a.study_count},
       {"study_means", a.study_means}};
}

}  // namespace vulnforge::annotate
