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

#include "vulnforge/evalkit/similarity.hpp"

#include <algorithm>
#include <cmath>

namespace vulnforge::evalkit {

std::size_t similarity_bin(double cosine) {
  const double pos = (std::clamp(cosine, -1.0, 1.0) + 1.0) / 2.0 * kSimilarityBins;
  return std::min(static_cast<std::size_t>(std::floor(pos)), kSimilarityBins - 1);
}

SimilarityReport similarity_report(const std::vector<std::pair<std::string, std::string>>& pairs,
                                   embed::Encoder& encoder) {
  SimilarityReport report;
  if (pairs.empty()) return report;
  std::vector<std::string> texts;
  texts.reserve(pairs.size() * 2);
  for (const auto& [g, t] : pairs) {
    texts.push_back(g);
    texts.push_back(t);
  }
  const auto vecs = encoder.encode(texts);
  double sum = 0.0;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const double c = embed::cosine(vecs[2 * i], vecs[2 * i + 1]);
    report.cosines.push_back(c);
    ++report.histogram[similarity_bin(c)];
    sum += c;
  }
  report.mean = sum / static_cast<double>(pairs.size());
  return report;
}

}  // namespace vulnforge::evalkit
