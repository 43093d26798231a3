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

#include "vulnforge/core/manifest.hpp"

#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <set>

#include "vulnforge/core/error.hpp"

namespace vulnforge {

DatasetManifest::DatasetManifest(std::string name, GatePolicy policy, Stage stage,
                                 std::string created_at)
    : name(std::move(name)),
      encoder_policy(std::move(policy)),
      stage(stage),
      created_at(std::move(created_at)) {}

void DatasetManifest::add(AugmentedInstance instance) {
  if (by_id_.count(instance.cve_id) != 0) throw DuplicateIdError(instance.cve_id);
  by_id_.emplace(instance.cve_id, instances_.size());
  instances_.push_back(std::move(instance));
}

const AugmentedInstance* DatasetManifest::find(const std::string& cve_id) const {
  auto it = by_id_.find(cve_id);
  return it == by_id_.end() ? nullptr : &instances_[it->second];
}

bool DatasetManifest::operator==(const DatasetManifest& other) const {
  return name == other.name && encoder_policy == other.encoder_policy &&
         stage == other.stage && created_at == other.created_at &&
         config_hash == other.config_hash && instances_ == other.instances_;
}

namespace {

bool grade_in_range(int v) { return v >= 1 && v <= 3; }

}  // namespace

std::vector<Violation> validate_manifest(const DatasetManifest& manifest) {
  std::vector<Violation> out;
  if (manifest.name.empty()) out.push_back({std::nullopt, "", "manifest name is empty"});
  std::set<std::string> seen;
  const auto& items = manifest.instances();
  for (std::size_t i = 0; i < items.size(); ++i) {
    const auto& inst = items[i];
    auto flag = [&](std::string msg) { out.push_back({i, inst.cve_id, std::move(msg)}); };
    if (!is_valid_cve_id(inst.cve_id)) flag("malformed cve_id");
    if (!seen.insert(inst.cve_id).second) flag("duplicate cve_id");
    if (inst.description.empty()) flag("empty description");
    if (inst.augmented_text.empty()) flag("empty augmented_text");
    for (const auto& src : inst.sources) {
      for (const auto& [encoder, score] : src.scores) {
        if (!std::isfinite(score) || score < -1.0 || score > 1.0) {
          flag("score out of [-1, 1] for encoder " + encoder + " at " + src.url);
        }
      }
    }
    if (inst.label && inst.label->empty()) flag("empty label");
    for (const auto& g : inst.grades) {
      if (!grade_in_range(g.fluency) || !grade_in_range(g.completeness) ||
          !grade_in_range(g.correctness) || !grade_in_range(g.understanding)) {
        flag("grade outside 1..3");
      }
    }
  }
  return out;
}

void write_manifest(std::ostream& out, const DatasetManifest& manifest) {
  nlohmann::json header = {{"name", manifest.name},
                           {"encoder_policy", manifest.encoder_policy},
                           {"stage", to_string(manifest.stage)},
                           {"created_at", manifest.created_at}};
  if (manifest.config_hash) header["config_hash"] = *manifest.config_hash;
  out << header.dump() << '\n';
  for (const auto& inst : manifest.instances()) out << nlohmann::json(inst).dump() << '\n';
}

DatasetManifest read_manifest(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  std::size_t offset = 0;
  auto parse = [&](const std::string& text) {
    try {
      return nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
      throw FeedParseError("manifest line " + std::to_string(line_no) + ": " + e.what(),
                           offset + e.byte);
    }
  };
  DatasetManifest manifest;
  bool have_header = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty()) {
      auto j = parse(line);
      if (!have_header) {
        manifest.name = j.at("name").get<std::string>();
        manifest.encoder_policy = j.at("encoder_policy").get<GatePolicy>();
        manifest.stage = stage_from_string(j.at("stage").get<std::string>());
        manifest.created_at = j.at("created_at").get<std::string>();
        if (j.contains("config_hash")) manifest.config_hash = j["config_hash"].get<std::string>();
        have_header = true;
      } else {
        manifest.add(j.get<AugmentedInstance>());
      }
    }
    offset += line.size() + 1;
  }
  if (!have_header) throw ValidationError("manifest has no header line");
  return manifest;
}

void save_manifest(const std::string& path, const DatasetManifest& manifest) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path);
  write_manifest(out, manifest);
}

DatasetManifest load_manifest(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw NotFoundError("cannot read " + path);
  return read_manifest(in);
}

}  // namespace vulnforge
