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

#include <cstddef>
#include <string>
#include <string_view>

#include "vulnforge/core/types.hpp"

namespace vulnforge::textprep {

enum StripClass : unsigned {
  kStripUrls = 1u << 0,
  kStripEmails = 1u << 1,
  kStripPhones = 1u << 2,
  kStripSpecialChars = 1u << 3,
  kStripRedundantWhitespace = 1u << 4,
  kStripAll = 0x1Fu,
};

struct CleanPolicy {
  std::size_t min_words = 20;
  unsigned strip = kStripAll;

  bool strips(StripClass c) const { return (strip & c) != 0; }
};

// Removes the policy's text classes. Each removed span is replaced by one
// space, then whitespace runs collapse and the ends are trimmed.
//
// Special characters are everything except letters, digits, whitespace and
// . , : ; - ( ) / '. Phones are runs of at least seven digits joined by
// + - space ( ) that start a whitespace-delimited token.
std::string clean(std::string_view text, const CleanPolicy& policy = {});

// Fills `cleaned` and `word_count` from `raw`.
void clean_paragraph(Paragraph& p, const CleanPolicy& policy = {});

bool passes_length_gate(const Paragraph& p, const CleanPolicy& policy = {});

}  // namespace vulnforge::textprep
