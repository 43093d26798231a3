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

#include "vulnforge/annotate/ledger.hpp"

#include <fstream>

#include "vulnforge/core/error.hpp"

namespace vulnforge::annotate {

Ledger::Ledger(std::string path) : path_(std::move(path)) {}

std::vector<nlohmann::json> Ledger::read_all() const {
  std::lock_guard lock(mutex_);
  if (path_.empty()) return memory_;
  std::vector<nlohmann::json> out;
  std::ifstream in(path_, std::ios::binary);
  if (!in) return out;  // a missing ledger is an empty one
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    try {
      out.push_back(nlohmann::json::parse(line));
    } catch (const nlohmann::json::parse_error& e) {
      throw ValidationError(path_ + ":" + std::to_string(lineno) + ": " + e.what());
    }
  }
  return out;
}

void Ledger::append(const nlohmann::json& entry) {
  std::lock_guard lock(mutex_);
  if (path_.empty()) {
    memory_.push_back(entry);
    return;
  }
  std::ofstream out(path_, std::ios::binary | std::ios::app);
  if (!out) throw Error("cannot append to " + path_);
  out << entry.dump() << '\n';
  out.flush();
  if (!out) throw Error("write failed on " + path_);
}

}  // namespace vulnforge::annotate
