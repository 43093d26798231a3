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

#include "vulnforge/tokenize/vocab.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>

#include "vulnforge/core/error.hpp"
#include "vulnforge/tokenize/bpe.hpp"
#include "vulnforge/tokenize/unigram.hpp"

namespace vulnforge::tokenize {

bool SubwordVocab::contains(const std::string& token) const {
  return std::find(tokens.begin(), tokens.end(), token) != tokens.end();
}

void validate_vocab(const SubwordVocab& vocab) {
  if (vocab.tokens.size() > vocab.size_limit) throw ValidationError("vocabulary exceeds size_limit");
  const std::set<std::string> set(vocab.tokens.begin(), vocab.tokens.end());
  if (set.size() != vocab.tokens.size()) throw ValidationError("vocabulary has duplicate tokens");
  if (vocab.kind == VocabKind::kBpe) {
    for (const auto& [l, r] : vocab.merges) {
      if (set.count(l + r) == 0) throw ValidationError("merge result missing from tokens: " + l + r);
    }
    return;
  }
  double mass = 0.0;
  for (const auto& t : vocab.tokens) {
    auto it = vocab.logprob.find(t);
    if (it == vocab.logprob.end()) throw ValidationError("token without probability: " + t);
    if (!(it->second <= 0.0)) throw ValidationError("log-probability above zero for " + t);
    mass += std::exp(it->second);
  }
  if (mass > 1.0 + 1e-6) throw ValidationError("unigram probabilities sum above one");
}

void to_json(nlohmann::json& j, const SubwordVocab& v) {
  nlohmann::json merges = nlohmann::json::array();
  for (const auto& [l, r] : v.merges) merges.push_back({l, r});
  j = {{"kind", v.kind == VocabKind::kBpe ? "bpe" : "unigram"},
       {"tokens", v.tokens},
       {"merges", merges},
       {"logprob", v.logprob},
       {"unk_token", v.unk_token},
       {"size_limit", v.size_limit}};
}

void from_json(const nlohmann::json& j, SubwordVocab& v) {
  const auto kind = j.at("kind").get<std::string>();
  if (kind == "bpe") {
    v.kind = VocabKind::kBpe;
  } else if (kind == "unigram") {
    v.kind = VocabKind::kUnigram;
  } else {
    throw ValidationError("unknown vocabulary kind: " + kind);
  }
  j.at("tokens").get_to(v.tokens);
  v.merges.clear();
  for (const auto& m : j.value("merges", nlohmann::json::array())) {
    v.merges.emplace_back(m.at(0).get<std::string>(), m.at(1).get<std::string>());
  }
  v.logprob = j.value("logprob", std::map<std::string, double>{});
  v.unk_token = j.value("unk_token", std::string(kDefaultUnk));
  v.size_limit = j.value("size_limit", v.tokens.size());
}

void save_vocab(const std::string& path, const SubwordVocab& vocab) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path);
  out << nlohmann::json(vocab).dump(1) << '\n';
}

SubwordVocab load_vocab(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw NotFoundError("cannot read " + path);
  auto vocab = nlohmann::json::parse(in).get<SubwordVocab>();
  validate_vocab(vocab);
  return vocab;
}

std::vector<std::string> split_words(std::string_view text) {
  std::vector<std::string> out;
  std::size_t i = 0;
  auto space = [](char c) {
    return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
  };
  while (i < text.size()) {
    while (i < text.size() && space(text[i])) ++i;
    std::size_t j = i;
    while (j < text.size() && !space(text[j])) ++j;
    if (j > i) out.emplace_back(text.substr(i, j - i));
    i = j;
  }
  return out;
}

std::vector<std::string> utf8_chars(std::string_view s) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < s.size()) {
    const auto c = static_cast<unsigned char>(s[i]);
    std::size_t len = 1;
    if ((c & 0xE0) == 0xC0) {
      len = 2;
    } else if ((c & 0xF0) == 0xE0) {
      len = 3;
    } else if ((c & 0xF8) == 0xF0) {
      len = 4;
    }
    if (i + len > s.size()) len = 1;
    for (std::size_t k = 1; k < len; ++k) {
      if ((static_cast<unsigned char>(s[i + k]) & 0xC0) != 0x80) {
        len = 1;
        break;
      }
    }
    out.emplace_back(s.substr(i, len));
    i += len;
  }
  return out;
}

namespace {

std::vector<std::string> unigram_tokenize(std::string_view text, const SubwordVocab& vocab) {
  std::vector<std::string> out;
  for (const auto& word : split_words(text)) {
    const auto chars = utf8_chars(std::string(kWordMarker) + word);
    std::string run;
    auto flush = [&] {
      if (run.empty()) return;
      auto seg = best_segmentation(run, vocab);
      out.insert(out.end(), seg.begin(), seg.end());
      run.clear();
    };
    for (const auto& ch : chars) {
      if (vocab.logprob.count(ch) != 0) {
        run += ch;
      } else {
        flush();
        out.push_back(vocab.unk_token);
      }
    }
    flush();
  }
  return out;
}

}  // namespace

std::vector<std::string> tokenize_map(std::string_view text, const SubwordVocab& vocab) {
  if (vocab.kind == VocabKind::kUnigram) return unigram_tokenize(text, vocab);
  BpeModel model(vocab);
  std::vector<std::string> out;
  for (const auto& word : split_words(text)) {
    auto pieces = model.encode_word(word);
    out.insert(out.end(), pieces.begin(), pieces.end());
  }
  return out;
}

std::string detokenize(const std::vector<std::string>& tokens, const SubwordVocab& vocab) {
  std::string out;
  for (const auto& tok : tokens) {
    if (tok == vocab.unk_token) {
      out += tok;
      continue;
    }
    std::string_view body = tok;
    if (body.substr(0, kWordMarker.size()) == kWordMarker) {
      if (!out.empty()) out += ' ';
      body.remove_prefix(kWordMarker.size());
    }
    if (vocab.kind == VocabKind::kBpe) {
      if (!symbols_to_bytes(body, out)) out += vocab.unk_token;
    } else {
      out += body;
    }
  }
  return out;
}

}  // namespace vulnforge::tokenize
