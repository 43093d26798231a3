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
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "vulnforge/annotate/ledger.hpp"
#include "vulnforge/core/manifest.hpp"

namespace vulnforge::annotate {

// Uniform sample without replacement: a seeded Fisher-Yates shuffle of
// `ids` truncated to n. Throws ValidationError when n > ids.size().
std::vector<std::string> sample_batch(const std::vector<std::string>& ids, std::size_t n,
                                      std::uint64_t seed);

// Fraction of the label's sentences that occur verbatim as sentences of
// `augmented_text` (trailing periods ignored). Zero for an empty label.
double extractive_ratio(const std::string& label, const std::string& augmented_text);

void validate_grade(const GradeRecord& g);
void validate_study(const StudyRecord& s);

struct LabelRecord {
  std::string summary;
  std::string annotator_id;
  double extractive_ratio = 0.0;
  std::string labeled_at;
  bool operator==(const LabelRecord&) const = default;
};

struct SampleState {
  AugmentedInstance instance;
  std::map<std::string, LabelRecord> labels;  // by annotator, last write wins
  std::vector<GradeRecord> grades;
  std::vector<StudyRecord> studies;
  bool operator==(const SampleState&) const = default;
};

struct ServiceOptions {
  std::size_t sample_size = 100;
  std::uint64_t label_seed = 1;
  std::uint64_t grade_seed = 2;
};

enum class SampleStatus { kAny, kUnlabeled, kUngraded };

struct Aggregates {
  std::size_t labeled = 0;
  std::size_t graded_samples = 0;
  std::size_t grade_count = 0;
  std::map<std::string, double> grade_means;  // absent when nothing graded
  std::size_t study_count = 0;
  std::map<std::string, double> study_means;
};

// Materialized annotation state over a manifest. Every write is appended to
// the ledger before it becomes visible; construction replays the ledger.
// Writers are serialised; readers take the current snapshot.
class AnnotationService {
 public:
  AnnotationService(DatasetManifest manifest, std::string ledger_path, ServiceOptions options = {});

  const std::vector<std::string>& label_sample() const { return label_sample_; }
  const std::vector<std::string>& grade_sample() const { return grade_sample_; }

  // Ids in ascending order. kUnlabeled draws from the label sample and
  // kUngraded from the grading sample; kAny is their union.
  std::vector<std::string> list(SampleStatus status, std::optional<std::size_t> limit) const;

  // Throws NotFoundError for an unknown id.
  SampleState get(const std::string& id) const;

  LabelRecord put_label(const std::string& id, const std::string& summary, const std::string& annotator_id);
  // Requires an attached generated summary.
  GradeRecord put_grades(const std::string& id, GradeRecord grade);
  StudyRecord put_study(const std::string& id, StudyRecord study);

  Aggregates aggregates() const;

  // Every sample's state keyed by id, for comparing replays.
  std::map<std::string, SampleState> snapshot() const;

 private:
  using State = std::map<std::string, SampleState>;

  void apply(State& state, const nlohmann::json& entry) const;
  void commit(const nlohmann::json& entry);
  std::shared_ptr<const State> current() const;

  std::vector<std::string> label_sample_;
  std::vector<std::string> grade_sample_;
  Ledger ledger_;
  mutable std::mutex write_mutex_;
  mutable std::mutex snapshot_mutex_;
  std::shared_ptr<const State> state_;
};

void to_json(nlohmann::json& j, const LabelRecord& r);
void from_json(const nlohmann::json& j, LabelRecord& r);
void to_json(nlohmann::json& j, const SampleState& s);
void to_json(nlohmann::json& j, const Aggregates& a);

}  // namespace vulnforge::annotate
