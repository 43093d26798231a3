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

#include <string>
#include <string_view>
#include <vector>

namespace vulnforge::evalkit {

struct RougeScore {
  double recall = 0.0;
  double precision = 0.0;
  double f1 = 0.0;
};

// Lowercased maximal alphanumeric runs. Bytes >= 0x80 count as
// alphanumeric so non-ASCII words stay whole.
std::vector<std::string> rouge_tokens(std::string_view text);

// Unigram overlap with clipped counts. recall = overlap / |target|,
// precision = overlap / |generated|; an empty side gives zero for the
// ratio it divides.
RougeScore rouge1(std::string_view generated, std::string_view target);

}  // namespace vulnforge::evalkit
