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
#include <span>
#include <string>
#include <vector>

#include "vulnforge/core/manifest.hpp"
#include "vulnforge/embed/encoder.hpp"
#include "vulnforge/textprep/clean.hpp"

namespace vulnforge::augment {

// Encoders keyed by the role the gate policy refers to ("use", "mpnet", ...).
using EncoderSet = std::map<std::string, embed::Encoder*>;

struct BuildOptions {
  std::string name = "dataset";
  std::string created_at;  // empty: now
};

struct BuildOutcome {
  DatasetManifest manifest;
  std::vector<std::string> warnings;
};

// Cleans raw paragraphs and keeps those passing the length gate.
std::vector<Paragraph> prepare_paragraphs(std::span<const Paragraph> raw,
                                          const textprep::CleanPolicy& policy = {});

// One instance per record whose gated paragraphs are non-empty. Accepted
// paragraphs are joined in (reference order, index) order with single spaces,
// each ending in a period. `paragraphs[i]` belongs to `records[i]` and must
// already be cleaned and length-gated. Records without references or with
// no accepted paragraph are omitted; an encoder failure skips the record
// with a warning.
BuildOutcome build_dataset(std::span<const VulnRecord> records,
                           std::span<const std::vector<Paragraph>> paragraphs,
                           const GatePolicy& policy, const EncoderSet& encoders,
                           const BuildOptions& options = {});

}  // namespace vulnforge::augment
