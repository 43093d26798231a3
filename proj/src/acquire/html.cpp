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

#include "vulnforge/acquire/html.hpp"

#include <array>
#include <cctype>
#include <cstdint>

namespace vulnforge::acquire {
namespace {

bool is_space(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
}

std::string lower(std::string_view s) {
  std::string out(s);
  for (auto& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

// Case-insensitive search for `needle` (already lowercase) from `from`.
std::size_t find_ci(std::string_view hay, std::string_view needle, std::size_t from) {
  if (needle.size() > hay.size()) return std::string_view::npos;
  for (std::size_t i = from; i + needle.size() <= hay.size(); ++i) {
    std::size_t k = 0;
    while (k < needle.size() &&
           std::tolower(static_cast<unsigned char>(hay[i + k])) == needle[k]) {
      ++k;
    }
    if (k == needle.size()) return i;
  }
  return std::string_view::npos;
}

void append_utf8(std::string& out, std::uint32_t cp) {
  if (cp == 0 || cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) cp = 0xFFFD;
  if (cp < 0x80) {
    out.push_back(static_cast<char>(cp));
  } else if (cp < 0x800) {
    out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else if (cp < 0x10000) {
    out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else {
    out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  }
}

void append_decoded(std::string& out, std::string_view text) {
  struct Named {
    std::string_view name;
    std::uint32_t cp;
  };
  static constexpr std::array<Named, 9> kNamed = {{{"amp", '&'},
                                                   {"lt", '<'},
                                                   {"gt", '>'},
                                                   {"quot", '"'},
                                                   {"apos", '\''},
                                                   {"nbsp", ' '},
                                                   {"ndash", 0x2013},
                                                   {"mdash", 0x2014},
                                                   {"hellip", 0x2026}}};
  std::size_t i = 0;
  while (i < text.size()) {
    if (text[i] != '&') {
      out.push_back(text[i++]);
      continue;
    }
    const auto semi = text.find(';', i + 1);
    if (semi == std::string_view::npos || semi - i > 10) {
      out.push_back(text[i++]);
      continue;
    }
    const auto name = text.substr(i + 1, semi - i - 1);
    bool decoded = false;
    if (!name.empty() && name[0] == '#') {
      const bool hex = name.size() > 1 && (name[1] == 'x' || name[1] == 'X');
      const auto digits = name.substr(hex ? 2 : 1);
      std::uint32_t cp = 0;
      bool ok = !digits.empty();
      for (char c : digits) {
        const auto uc = static_cast<unsigned char>(c);
        if (hex ? !std::isxdigit(uc) : !std::isdigit(uc)) {
          ok = false;
          break;
        }
        const std::uint32_t d = std::isdigit(uc) ? uc - '0' : (std::tolower(uc) - 'a' + 10);
        cp = cp * (hex ? 16 : 10) + d;
        if (cp > 0x10FFFF) cp = 0x110000;
      }
      if (ok) {
        append_utf8(out, cp);
        decoded = true;
      }
    } else {
      for (const auto& n : kNamed) {
        if (n.name == name) {
          append_utf8(out, n.cp);
          decoded = true;
          break;
        }
      }
    }
    if (decoded) {
      i = semi + 1;
    } else {
      out.push_back(text[i++]);
    }
  }
}

// Elements whose start or end implicitly closes an open <p>.
bool closes_paragraph(const std::string& name, bool closing) {
  static constexpr std::array<std::string_view, 30> kBlock = {
      "address", "article", "aside",  "blockquote", "details", "div",    "dl",     "fieldset",
      "figure",  "footer",  "form",   "h1",         "h2",      "h3",     "h4",     "h5",
      "h6",      "header",  "hr",     "main",       "nav",     "ol",     "pre",    "section",
      "table",   "ul",      "body",   "html",       "td",      "li"};
  for (auto b : kBlock) {
    if (b == name) return true;
  }
  return closing && (name == "th" || name == "tr" || name == "dd" || name == "dt");
}

std::string normalize_ws(std::string_view s) {
  std::string out;
  bool pending = false;
  for (char c : s) {
    if (is_space(c)) {
      pending = !out.empty();
      continue;
    }
    if (pending) out.push_back(' ');
    pending = false;
    out.push_back(c);
  }
  return out;
}

}  // namespace

std::vector<std::string> extract_paragraphs(std::string_view html, std::size_t max_paragraphs) {
  std::vector<std::string> out;
  if (max_paragraphs == 0) return out;
  bool in_p = false;
  std::string current;

  auto close_p = [&] {
    if (!in_p) return;
    out.push_back(normalize_ws(current));
    current.clear();
    in_p = false;
  };

  std::size_t i = 0;
  while (i < html.size() && out.size() < max_paragraphs) {
    if (html[i] != '<') {
      auto next = html.find('<', i);
      if (next == std::string_view::npos) next = html.size();
      if (in_p) append_decoded(current, html.substr(i, next - i));
      i = next;
      continue;
    }
    if (html.compare(i, 4, "<!--") == 0) {
      const auto end = html.find("-->", i + 4);
      i = end == std::string_view::npos ? html.size() : end + 3;
      continue;
    }
    if (i + 1 < html.size() && (html[i + 1] == '!' || html[i + 1] == '?')) {
      const auto end = html.find('>', i);
      i = end == std::string_view::npos ? html.size() : end + 1;
      continue;
    }
    std::size_t j = i + 1;
    const bool closing = j < html.size() && html[j] == '/';
    if (closing) ++j;
    const std::size_t name_start = j;
    while (j < html.size() && std::isalnum(static_cast<unsigned char>(html[j]))) ++j;
    if (j == name_start) {
      // A bare '<' is text.
      if (in_p) current.push_back('<');
      ++i;
      continue;
    }
    const auto name = lower(html.substr(name_start, j - name_start));
    // Skip attributes, honouring quoted values.
    char quote = 0;
    while (j < html.size()) {
      const char c = html[j];
      if (quote) {
        if (c == quote) quote = 0;
      } else if (c == '"' || c == '\'') {
        quote = c;
      } else if (c == '>') {
        break;
      }
      ++j;
    }
    i = j < html.size() ? j + 1 : html.size();

    if (!closing && (name == "script" || name == "style")) {
      const auto end = find_ci(html, "</" + name, i);
      if (end == std::string_view::npos) {
        i = html.size();
      } else {
        const auto gt = html.find('>', end);
        i = gt == std::string_view::npos ? html.size() : gt + 1;
      }
      continue;
    }
    if (name == "p") {
      close_p();
      if (!closing) in_p = true;
      continue;
    }
    if (closes_paragraph(name, closing)) {
      close_p();
      continue;
    }
    // Any other tag separates text nodes.
    if (in_p) current.push_back(' ');
  }
  if (out.size() < max_paragraphs) close_p();
  return out;
}

}  // namespace vulnforge::acquire
