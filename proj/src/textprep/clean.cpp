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

#include "vulnforge/textprep/clean.hpp"

#include <cctype>
#include <cstdint>

namespace vulnforge::textprep {
namespace {

bool is_space(unsigned char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
}

bool starts_with_ci(std::string_view s, std::size_t at, std::string_view prefix) {
  if (s.size() - at < prefix.size()) return false;
  for (std::size_t k = 0; k < prefix.size(); ++k) {
    if (std::tolower(static_cast<unsigned char>(s[at + k])) != prefix[k]) return false;
  }
  return true;
}

std::string strip_urls(std::string_view s) {
  static constexpr std::string_view kPrefixes[] = {"https://", "http://", "ftp://", "www."};
  std::string out;
  out.reserve(s.size());
  std::size_t i = 0;
  while (i < s.size()) {
    bool hit = false;
    for (auto p : kPrefixes) {
      if (starts_with_ci(s, i, p)) {
        hit = true;
        break;
      }
    }
    if (!hit) {
      out.push_back(s[i++]);
      continue;
    }
    while (i < s.size() && !is_space(static_cast<unsigned char>(s[i]))) ++i;
    out.push_back(' ');
  }
  return out;
}

bool email_local_char(unsigned char c) {
  return std::isalnum(c) || c == '.' || c == '_' || c == '%' || c == '+' || c == '-';
}

bool email_domain_char(unsigned char c) { return std::isalnum(c) || c == '.' || c == '-'; }

std::string strip_emails(std::string_view s) {
  std::string out(s);
  std::size_t at = out.find('@');
  while (at != std::string::npos) {
    std::size_t b = at;
    while (b > 0 && email_local_char(static_cast<unsigned char>(out[b - 1]))) --b;
    std::size_t e = at + 1;
    while (e < out.size() && email_domain_char(static_cast<unsigned char>(out[e]))) ++e;
    std::size_t domain_end = e;
    while (domain_end > at + 1 && out[domain_end - 1] == '.') --domain_end;
    const std::string_view domain(out.data() + at + 1, domain_end - at - 1);
    const auto dot = domain.rfind('.');
    bool valid = b < at && dot != std::string_view::npos && dot > 0 && domain.size() - dot - 1 >= 2;
    if (valid) {
      for (std::size_t k = dot + 1; k < domain.size(); ++k) {
        if (!std::isalpha(static_cast<unsigned char>(domain[k]))) valid = false;
      }
    }
    if (valid) {
      out.replace(b, domain_end - b, " ");
      at = out.find('@', b + 1);
    } else {
      at = out.find('@', at + 1);
    }
  }
  return out;
}

// Decodes one UTF-8 sequence at s[i]; returns its length (0 when invalid).
std::size_t decode_utf8(std::string_view s, std::size_t i, char32_t& cp) {
  const auto c = static_cast<unsigned char>(s[i]);
  std::size_t len = 0;
  if (c < 0x80) {
    cp = c;
    return 1;
  } else if ((c & 0xE0) == 0xC0) {
    cp = c & 0x1F;
    len = 2;
  } else if ((c & 0xF0) == 0xE0) {
    cp = c & 0x0F;
    len = 3;
  } else if ((c & 0xF8) == 0xF0) {
    cp = c & 0x07;
    len = 4;
  } else {
    return 0;
  }
  if (i + len > s.size()) return 0;
  for (std::size_t k = 1; k < len; ++k) {
    const auto cc = static_cast<unsigned char>(s[i + k]);
    if ((cc & 0xC0) != 0x80) return 0;
    cp = (cp << 6) | (cc & 0x3F);
  }
  return len;
}

// Letters outside ASCII: Latin-1/Extended Latin, Greek, Cyrillic, Hebrew,
// Arabic, kana, CJK ideographs and Hangul.
bool is_non_ascii_letter(char32_t cp) {
  if (cp >= 0xC0 && cp <= 0x24F) return cp != 0xD7 && cp != 0xF7;
  return (cp >= 0x370 && cp <= 0x3FF) || (cp >= 0x400 && cp <= 0x4FF) ||
         (cp >= 0x5D0 && cp <= 0x5EA) || (cp >= 0x620 && cp <= 0x64A) ||
         (cp >= 0x3040 && cp <= 0x30FF) || (cp >= 0x4E00 && cp <= 0x9FFF) ||
         (cp >= 0xAC00 && cp <= 0xD7AF);
}

bool is_kept_ascii(unsigned char c) {
  if (std::isalnum(c) || is_space(c)) return true;
  switch (c) {
    case '.':
    case ',':
    case ':':
    case ';':
    case '-':
    case '(':
    case ')':
    case '/':
    case '\'':
      return true;
    default:
      return false;
  }
}

std::string strip_special(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  std::size_t i = 0;
  while (i < s.size()) {
    char32_t cp = 0;
    const auto len = decode_utf8(s, i, cp);
    if (len == 0) {
      out.push_back(' ');
      ++i;
      continue;
    }
    const bool keep = len == 1 ? is_kept_ascii(static_cast<unsigned char>(s[i]))
                               : is_non_ascii_letter(cp);
    if (keep) {
      out.append(s.substr(i, len));
    } else {
      out.push_back(' ');
    }
    i += len;
  }
  return out;
}

bool phone_sep(unsigned char c) { return c == '+' || c == '-' || c == ' ' || c == '(' || c == ')'; }

bool phone_may_follow(unsigned char c) {
  return is_space(c) || phone_sep(c) || c == '.' || c == ',' || c == ';' || c == ':';
}

std::string strip_phones(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  std::size_t i = 0;
  while (i < s.size()) {
    const auto c = static_cast<unsigned char>(s[i]);
    const bool boundary = i == 0 || is_space(static_cast<unsigned char>(s[i - 1]));
    if (!boundary || !(std::isdigit(c) || c == '+' || c == '(')) {
      out.push_back(s[i++]);
      continue;
    }
    std::size_t j = i;
    while (j < s.size() &&
           (std::isdigit(static_cast<unsigned char>(s[j])) || phone_sep(static_cast<unsigned char>(s[j])))) {
      ++j;
    }
    // Longest span ending in a digit, followed by an allowed character, with
    // at least seven digits.
    std::size_t best_end = 0;
    std::size_t digits = 0;
    for (std::size_t k = i; k < j; ++k) {
      if (!std::isdigit(static_cast<unsigned char>(s[k]))) continue;
      ++digits;
      const bool ok_next = k + 1 == s.size() || phone_may_follow(static_cast<unsigned char>(s[k + 1]));
      if (digits >= 7 && ok_next) best_end = k + 1;
    }
    if (best_end == 0) {
      out.push_back(s[i++]);
      continue;
    }
    out.push_back(' ');
    i = best_end;
  }
  return out;
}

std::string collapse_whitespace(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  bool pending = false;
  for (char ch : s) {
    if (is_space(static_cast<unsigned char>(ch))) {
      pending = !out.empty();
      continue;
    }
    if (pending) out.push_back(' ');
    pending = false;
    out.push_back(ch);
  }
  return out;
}

}  // namespace

std::string clean(std::string_view text, const CleanPolicy& policy) {
  std::string s(text);
  // Special characters go before phones so that a separator such as ','
  // becomes a space in the same pass that decides phone boundaries.
  if (policy.strips(kStripUrls)) s = strip_urls(s);
  if (policy.strips(kStripEmails)) s = strip_emails(s);
  if (policy.strips(kStripSpecialChars)) s = strip_special(s);
  if (policy.strips(kStripPhones)) s = strip_phones(s);
  if (policy.strips(kStripRedundantWhitespace)) s = collapse_whitespace(s);
  return s;
}

void clean_paragraph(Paragraph& p, const CleanPolicy& policy) {
  p.cleaned = clean(p.raw, policy);
  p.word_count = count_words(p.cleaned);
}

bool passes_length_gate(const Paragraph& p, const CleanPolicy& policy) {
  const auto words = count_words(p.cleaned);
  return words > 0 && words >= policy.min_words;
}

}  // namespace vulnforge::textprep
