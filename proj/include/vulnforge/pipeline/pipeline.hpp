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

#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "vulnforge/pipeline/run_config.hpp"

namespace vulnforge::pipeline {

// Dependency order. Each stage reads the artifacts of earlier stages from
// the output directory, so any suffix can be rerun on its own.
inline const std::vector<std::string>& stage_names() {
  static const std::vector<std::string> kStages = {"ingest", "scrape",   "build", "refine",
                                                   "tokenize", "train", "eval"};
  return kStages;
}

// Artifact file names inside the output directory.
inline constexpr const char* kRecordsFile = "records.jsonl";
inline constexpr const char* kParagraphsFile = "paragraphs.jsonl";
inline constexpr const char* kRawManifestFile = "dataset.raw.jsonl";
inline constexpr const char* kRefinedManifestFile = "dataset.refined.jsonl";
inline constexpr const char* kVocabFile = "vocab.json";
inline constexpr const char* kModelFile = "model.json";
inline constexpr const char* kTrainReportFile = "train_report.json";
inline constexpr const char* kEvalFile = "eval.json";
inline constexpr const char* kRunReportFile = "run_report.json";

enum class StageStatus { kOk, kFailed, kSkipped, kNotRun };
const char* to_string(StageStatus s);

struct StageResult {
  std::string name;
  StageStatus status = StageStatus::kNotRun;
  std::map<std::string, std::string> outputs;  // file name -> sha256
  nlohmann::json summary = nlohmann::json::object();
  std::string error;
};

struct RunReport {
  std::string config_hash;
  std::vector<StageResult> stages;
  // True when every requested stage succeeded.
  bool ok() const;
};

struct RunOptions {
  std::optional<std::vector<std::string>> only;  // default: all stages
  std::ostream* log = nullptr;
};

// Runs the requested stages in order. A failed stage marks every later
// requested stage skipped. The report is also written to run_report.json.
// Throws ValidationError for an unknown stage name.
RunReport run_pipeline(const RunConfig& config, const RunOptions& options = {});

nlohmann::json to_json(const RunReport& report);

}  // namespace vulnforge::pipeline
