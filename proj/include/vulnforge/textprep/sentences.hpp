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

#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace vulnforge::textprep {

// Splits on ". ". Pieces are whitespace-trimmed and empty pieces dropped; the
// last piece keeps a trailing period if the text had one.
std::vector<std::string> split_sentences(std::string_view text);

// Inverse of split_sentences on its own output: joins with ". ".
std::string join_sentences(std::span<const std::string> sentences);

}  // namespace vulnforge::textprep
