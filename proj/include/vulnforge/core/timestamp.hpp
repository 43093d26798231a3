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

#include <cstdint>
#include <string>

namespace vulnforge {

// RFC 3339 UTC, second precision: "2021-03-04T05:06:07Z".
std::string format_rfc3339(std::int64_t unix_seconds);

// Current time, or SOURCE_DATE_EPOCH when that variable is set so that
// reproducible runs stamp identical headers.
std::string now_rfc3339();

}  // namespace vulnforge
