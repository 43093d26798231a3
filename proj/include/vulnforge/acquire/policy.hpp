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

namespace vulnforge::acquire {

struct FetchPolicy {
  int year_lo = 2019;
  int year_hi = 2021;
  std::size_t max_paragraphs_per_page = 100;
  bool require_valid_tls = true;
  int timeout_ms = 10000;
  std::size_t max_concurrent_fetches = 4;
  std::size_t max_body_bytes = 5u * 1024 * 1024;
  int politeness_delay_ms = 500;
  int max_redirects = 5;

  // Throws ValidationError when an invariant is broken.
  void validate() const;
};

}  // namespace vulnforge::acquire
