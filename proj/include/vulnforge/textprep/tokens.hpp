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
#include <unordered_set>
#include <vector>

namespace vulnforge::textprep {

// The bundled English stop-word list (data/stopwords.txt).
const std::unordered_set<std::string>& stopwords();
bool is_stopword(std::string_view token);

// Number of UTF-8 code points.
std::size_t utf8_length(std::string_view s);

std::string ascii_lower(std::string_view s);

// Lowercased whitespace tokens with leading/trailing punctuation trimmed.
// Tokens that are pure punctuation disappear.
std::vector<std::string> word_tokens(std::string_view text);

// Drops stop-words and tokens shorter than 3 or longer than 20 code points,
// preserving order. Expects lowercased input.
std::vector<std::string> filter_tokens(std::span<const std::string> tokens);

}  // namespace vulnforge::textprep
