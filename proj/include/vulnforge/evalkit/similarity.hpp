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

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "vulnforge/embed/encoder.hpp"

namespace vulnforge::evalkit {

inline constexpr std::size_t kSimilarityBins = 10;

struct SimilarityReport {
  std::vector<double> cosines;  // one per pair, input order
  // Equal-width bins over [-1, 1]; the last bin is closed on the right.
  std::array<std::size_t, kSimilarityBins> histogram{};
  std::optional<double> mean;  // absent for an empty input
};

std::size_t similarity_bin(double cosine);

// Pairs are (generated, target).
SimilarityReport similarity_report(const std::vector<std::pair<std::string, std::string>>& pairs,
                                   embed::Encoder& encoder);

}  // namespace vulnforge::evalkit
