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

#include "vulnforge/augment/gate.hpp"

#include <cmath>

#include "vulnforge/core/error.hpp"

namespace vulnforge::augment {
namespace {

double score_of(const std::map<std::string, double>& scores, const std::string& id) {
  auto it = scores.find(id);
  if (it == scores.end()) throw PolicyError("missing score for encoder '" + id + "'");
  return it->second;
}

bool within(double s, double lo, double hi) {
  return s >= lo - kBoundSlack && s <= hi + kBoundSlack;
}

void check_range(double lo, double hi, const char* what) {
  if (!(lo < hi)) throw ValidationError(std::string(what) + ": lo must be below hi");
  if (lo < -1.0 || hi > 1.0) throw ValidationError(std::string(what) + ": bounds outside [-1, 1]");
}

}  // namespace

bool gate_paragraph(const std::map<std::string, double>& scores, const GatePolicy& policy) {
  auto under_ceiling = [&](double s) { return s <= policy.ceiling + kBoundSlack; };
  if (const auto* single = std::get_if<SingleGate>(&policy.mode)) {
    const double s = score_of(scores, single->encoder_id);
    return within(s, single->lo, single->hi) && under_ceiling(s);
  }
  const auto& dual = std::get<DualGate>(policy.mode);
  const double use = score_of(scores, kUseRole);
  const double mpnet = score_of(scores, kMpnetRole);
  return within(use, dual.use_lo, dual.use_hi) && within(mpnet, dual.mpnet_lo, dual.mpnet_hi) &&
         std::fabs(use - mpnet) <= dual.max_diff + kBoundSlack && under_ceiling(use) &&
         under_ceiling(mpnet);
}

std::vector<std::string> required_encoders(const GatePolicy& policy) {
  if (const auto* single = std::get_if<SingleGate>(&policy.mode)) return {single->encoder_id};
  return {kUseRole, kMpnetRole};
}

void validate_policy(const GatePolicy& policy) {
  if (const auto* single = std::get_if<SingleGate>(&policy.mode)) {
    if (single->encoder_id.empty()) throw ValidationError("single gate: empty encoder id");
    check_range(single->lo, single->hi, "single gate");
  } else {
    const auto& d = std::get<DualGate>(policy.mode);
    check_range(d.use_lo, d.use_hi, "dual gate (use)");
    check_range(d.mpnet_lo, d.mpnet_hi, "dual gate (mpnet)");
    if (d.max_diff < 0.0) throw ValidationError("dual gate: max_diff must be >= 0");
  }
}

GatePolicy policy_from_name(const std::string& name) {
  if (name == "single-use") return GatePolicy::single_use();
  if (name == "single-mpnet") return GatePolicy::single_mpnet();
  if (name == "dual") return GatePolicy::dual();
  throw ValidationError("unknown gate policy: " + name);
}

}  // namespace vulnforge::augment
