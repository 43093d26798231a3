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

#include <map>
#include <string>

#include "vulnforge/core/types.hpp"

namespace vulnforge::augment {

// Slack applied to every bound so that grid values such as 0.8 - 0.6 are
// compared as the decimals they denote.
inline constexpr double kBoundSlack = 1e-9;

// Single mode accepts lo <= s <= hi; dual mode accepts when both role scores
// are inside their ranges and differ by at most max_diff. Scores above the
// policy ceiling are rejected in either mode. Throws PolicyError when a
// referenced encoder score is missing.
bool gate_paragraph(const std::map<std::string, double>& scores, const GatePolicy& policy);

// Encoder roles the policy reads.
std::vector<std::string> required_encoders(const GatePolicy& policy);

// Throws ValidationError unless lo < hi, bounds lie in [-1, 1] and
// max_diff >= 0.
void validate_policy(const GatePolicy& policy);

// "single-use", "single-mpnet" or "dual".
GatePolicy policy_from_name(const std::string& name);

}  // namespace vulnforge::augment
