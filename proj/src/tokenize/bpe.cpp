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

#include "vulnforge/tokenize/bpe.hpp"

#include <array>
#include <limits>
#include <set>
#include <unordered_map>
#include <unordered_set>

#include "vulnforge/core/error.hpp"

namespace vulnforge::tokenize {
namespace {

std::string encode_cp(char32_t cp) {
  std::string out;
  if (cp < 0x80) {
    out.push_back(static_cast<char>(cp));
  } else if (cp < 0x800) {
    out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else {
    out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  }
  return out;
}

struct ByteTable {
  std::array<char32_t, 256> to_cp{};
  std::unordered_map<char32_t, unsigned char> from_cp;

  ByteTable() {
    auto printable = [](int b) {
      return (b >= '!' && b <= '~') || (b >= 0xA1 && b <= 0xAC) || (b >= 0xAE && b <= 0xFF);
    };
    char32_t next = 256;
    for (int b = 0; b < 256; ++b) {
      to_cp[b] = printable(b) ? static_cast<char32_t>(b) : next++;
      from_cp[to_cp[b]] = static_cast<unsigned char>(b);
    }
  }
};

const ByteTable& table() {
  static const ByteTable kTable;
  return kTable;
}

using Pair = std::pair<std::string, std::string>;

void merge_in_place(std::vector<std::string>& symbols, const Pair& pair) {
  if (symbols.size() < 2) return;
  std::vector<std::string> out;
  out.reserve(symbols.size());
  std::size_t i = 0;
  while (i < symbols.size()) {
    if (i + 1 < symbols.size() && symbols[i] == pair.first && symbols[i + 1] == pair.second) {
      out.push_back(pair.first + pair.second);
      i += 2;
    } else {
      out.push_back(std::move(symbols[i]));
      ++i;
    }
  }
  symbols = std::move(out);
}

}  // namespace

std::string byte_symbol(unsigned char byte) { return encode_cp(table().to_cp[byte]); }

bool symbols_to_bytes(std::string_view symbols, std::string& out) {
  const auto& t = table();
  std::size_t i = 0;
  while (i < symbols.size()) {
    const auto c = static_cast<unsigned char>(symbols[i]);
    char32_t cp = 0;
    std::size_t len = 1;
    if (c < 0x80) {
      cp = c;
    } else if ((c & 0xE0) == 0xC0 && i + 1 < symbols.size()) {
      cp = ((c & 0x1F) << 6) | (static_cast<unsigned char>(symbols[i + 1]) & 0x3F);
      len = 2;
    } else if ((c & 0xF0) == 0xE0 && i + 2 < symbols.size()) {
      cp = ((c & 0x0F) << 12) | ((static_cast<unsigned char>(symbols[i + 1]) & 0x3F) << 6) |
           (static_cast<unsigned char>(symbols[i + 2]) & 0x3F);
      len = 3;
    } else {
      return false;
    }
    i += len;
    if (cp == 0x2581) {
      out.push_back(' ');
      continue;
    }
    auto it = t.from_cp.find(cp);
    if (it == t.from_cp.end()) return false;
    out.push_back(static_cast<char>(it->second));
  }
  return true;
}

std::vector<std::string> initial_symbols(std::string_view word) {
  std::vector<std::string> out;
  out.reserve(word.size());
  for (std::size_t i = 0; i < word.size(); ++i) {
    auto sym = byte_symbol(static_cast<unsigned char>(word[i]));
    out.push_back(i == 0 ? std::string(kWordMarker) + sym : sym);
  }
  return out;
}

SubwordVocab train_bpe(std::span<const std::string> corpus, std::size_t size_limit,
                       const BpeOptions& options) {
  if (corpus.empty()) throw ValidationError("train_bpe: empty corpus");
  std::map<std::string, std::size_t> word_counts;
  for (const auto& text : corpus) {
    for (auto& w : split_words(text)) ++word_counts[w];
  }
  std::vector<std::pair<std::vector<std::string>, std::size_t>> words;
  std::set<std::string> base;
  for (const auto& [w, n] : word_counts) {
    auto syms = initial_symbols(w);
    base.insert(syms.begin(), syms.end());
    words.emplace_back(std::move(syms), n);
  }
  if (size_limit < base.size()) {
    throw ValidationError("train_bpe: size_limit " + std::to_string(size_limit) +
                          " is below the base alphabet size " + std::to_string(base.size()));
  }

  SubwordVocab vocab;
  vocab.kind = VocabKind::kBpe;
  vocab.size_limit = size_limit;
  vocab.tokens.assign(base.begin(), base.end());
  std::unordered_set<std::string> present(base.begin(), base.end());

  while (vocab.tokens.size() < size_limit) {
    std::map<Pair, std::size_t> counts;
    for (const auto& [syms, n] : words) {
      for (std::size_t i = 0; i + 1 < syms.size(); ++i) counts[{syms[i], syms[i + 1]}] += n;
    }
    const Pair* best = nullptr;
    std::size_t best_count = 0;
    for (const auto& [pair, n] : counts) {
      if (n > best_count) {
        best = &pair;
        best_count = n;
      }
    }
    if (best == nullptr || best_count < options.min_pair_count) break;
    const Pair chosen = *best;
    vocab.merges.push_back(chosen);
    const auto merged = chosen.first + chosen.second;
    if (present.insert(merged).second) vocab.tokens.push_back(merged);
    for (auto& [syms, n] : words) merge_in_place(syms, chosen);
  }
  return vocab;
}

BpeModel::BpeModel(const SubwordVocab& vocab)
    : vocab_(&vocab), known_(vocab.tokens.begin(), vocab.tokens.end()) {
  for (std::size_t i = 0; i < vocab.merges.size(); ++i) ranks_.emplace(vocab.merges[i], i);
}

std::vector<std::string> BpeModel::apply_merges(std::vector<std::string> symbols) const {
  while (symbols.size() > 1) {
    std::size_t best_rank = std::numeric_limits<std::size_t>::max();
    const Pair* best = nullptr;
    for (std::size_t i = 0; i + 1 < symbols.size(); ++i) {
      auto it = ranks_.find({symbols[i], symbols[i + 1]});
      if (it != ranks_.end() && it->second < best_rank) {
        best_rank = it->second;
        best = &it->first;
      }
    }
    if (best == nullptr) break;
    merge_in_place(symbols, *best);
  }
  return symbols;
}

std::vector<std::string> BpeModel::encode_word(std::string_view word) const {
  std::vector<std::string> out;
  std::vector<std::string> run;
  auto flush = [&] {
    if (run.empty()) return;
    auto merged = apply_merges(std::move(run));
    out.insert(out.end(), merged.begin(), merged.end());
    run.clear();
  };
  std::size_t byte_pos = 0;
  for (const auto& ch : utf8_chars(word)) {
    std::vector<std::string> syms;
    for (std::size_t k = 0; k < ch.size(); ++k) {
      auto sym = byte_symbol(static_cast<unsigned char>(ch[k]));
      if (byte_pos == 0 && k == 0) sym = std::string(kWordMarker) + sym;
      syms.push_back(std::move(sym));
    }
    byte_pos += ch.size();
    bool all_known = true;
    for (const auto& s : syms) all_known = all_known && known_.count(s) != 0;
    if (all_known) {
      run.insert(run.end(), syms.begin(), syms.end());
    } else {
      flush();
      out.push_back(vocab_->unk_token);
    }
  }
  flush();
  return out;
}

}  // namespace vulnforge::tokenize
