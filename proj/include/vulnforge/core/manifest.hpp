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
#include <iosfwd>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "vulnforge/core/types.hpp"

namespace vulnforge {

// A named collection of augmented instances, one per CVE. Instances are kept
// in insertion order; cve_id uniqueness is enforced by add().
class DatasetManifest {
 public:
  DatasetManifest() = default;
  DatasetManifest(std::string name, GatePolicy policy, Stage stage, std::string created_at);

  std::string name;
  GatePolicy encoder_policy = GatePolicy::single_use();
  Stage stage = Stage::kRaw;
  std::string created_at;
  std::optional<std::string> config_hash;

  // Throws DuplicateIdError when the cve_id is already present.
  void add(AugmentedInstance instance);

  const std::vector<AugmentedInstance>& instances() const { return instances_; }
  std::size_t size() const { return instances_.size(); }
  bool empty() const { return instances_.empty(); }
  const AugmentedInstance* find(const std::string& cve_id) const;

  bool operator==(const DatasetManifest& other) const;

 private:
  std::vector<AugmentedInstance> instances_;
  std::unordered_map<std::string, std::size_t> by_id_;
};

struct Violation {
  std::optional<std::size_t> instance;  // absent for manifest-level problems
  std::string cve_id;
  std::string message;
};

// Checks every type invariant; an empty result means the manifest is valid.
std::vector<Violation> validate_manifest(const DatasetManifest& manifest);

// JSON Lines: a header object followed by one instance per line.
void write_manifest(std::ostream& out, const DatasetManifest& manifest);
DatasetManifest read_manifest(std::istream& in);

void save_manifest(const std::string& path, const DatasetManifest& manifest);
DatasetManifest load_manifest(const std::string& path);

}  // namespace vulnforge
