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
#include <vector>

namespace vulnforge::acquire {

// Text of the <p> elements of an HTML document in document order, at most
// `max_paragraphs` of them. Descendant text nodes are joined with single
// spaces; script, style and comment content is ignored; character
// references are decoded. Paragraphs that contain no text still occupy an
// index so positions match the document.
std::vector<std::string> extract_paragraphs(std::string_view html, std::size_t max_paragraphs);

}  // namespace vulnforge::acquire
