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

#include <mutex>
#include <string>
#include <vector>

#include <json.hpp>

namespace vulnforge::annotate {

// Append-only JSON Lines file. Each append is flushed before it returns.
// An empty path keeps entries in memory only.
class Ledger {
 public:
  explicit Ledger(std::string path);

  const std::string& path() const { return path_; }
  // Every entry in append order. Throws ValidationError on a malformed line.
  std::vector<nlohmann::json> read_all() const;
  void append(const nlohmann::json& entry);

 private:
  std::string path_;
  std::vector<nlohmann::json> memory_;
  mutable std::mutex mutex_;
};

}  // namespace vulnforge::annotate
