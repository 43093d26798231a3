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

#include "vulnforge/tokenize/unigram.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <unordered_map>

#include "vulnforge/core/error.hpp"

namespace vulnforge::tokenize {
namespace {

constexpr double kTieEps = 1e-12;
constexpr double kSmoothing = 0.1;

struct Index {
  std::unordered_map<std::string, double> logprob;
  std::size_t max_len = 1;  // in characters

  explicit Index(const SubwordVocab& vocab) {
    for (const auto& t : vocab.tokens) {
      auto it = vocab.logprob.find(t);
      if (it == vocab.logprob.end()) continue;
      logprob.emplace(t, it->second);
      max_len = std::max(max_len, utf8_chars(t).size());
    }
  }
};

struct Segmentation {
  bool ok = false;
  double score = 0.0;
  std::vector<std::string> tokens;
};

Segmentation segment(const std::vector<std::string>& chars, const Index& index,
                     const std::string* excluded) {
  const std::size_t n = chars.size();
  struct Cell {
    bool ok = false;
    double score = 0.0;
    std::size_t ntok = 0;
    std::size_t len = 0;
  };
  std::vector<Cell> best(n + 1);
  best[n] = {true, 0.0, 0, 0};
  for (std::size_t i = n; i-- > 0;) {
    std::string piece;
    for (std::size_t len = 1; len <= index.max_len && i + len <= n; ++len) {
      piece += chars[i + len - 1];
      const auto& rest = best[i + len];
      if (!rest.ok) continue;
      if (excluded && piece == *excluded) continue;
      auto it = index.logprob.find(piece);
      if (it == index.logprob.end()) continue;
      const double score = it->second + rest.score;
      const std::size_t ntok = rest.ntok + 1;
      auto& cur = best[i];
      const bool better =
          !cur.ok || score > cur.score + kTieEps ||
          (std::fabs(score - cur.score) <= kTieEps &&
           (ntok < cur.ntok || (ntok == cur.ntok && len > cur.len)));
      if (better) cur = {true, score, ntok, len};
    }
  }
  Segmentation out;
  if (!best[0].ok) return out;
  out.ok = true;
  out.score = best[0].score;
  for (std::size_t i = 0; i < n;) {
    std::string tok;
    for (std::size_t k = 0; k < best[i].len; ++k) tok += chars[i + k];
    out.tokens.push_back(std::move(tok));
    i += best[i].len;
  }
  return out;
}

bool is_single_char(const std::string& token) { return utf8_chars(token).size() == 1; }

std::vector<std::vector<std::string>> word_chars(std::span<const WordCount> words) {
  std::vector<std::vector<std::string>> out;
  out.reserve(words.size());
  for (const auto& w : words) out.push_back(utf8_chars(w.word));
  return out;
}

}  // namespace

double unigram_prob(std::span<const std::string> tokens, const SubwordVocab& vocab) {
  double sum = 0.0;
  for (const auto& t : tokens) {
    auto it = vocab.logprob.find(t);
    if (it == vocab.logprob.end() || !vocab.contains(t)) {
      throw ValidationError("token not in vocabulary: " + t);
    }
    sum += it->second;
  }
  return sum;
}

std::vector<std::string> best_segmentation(std::string_view word, const SubwordVocab& vocab) {
  const Index index(vocab);
  auto seg = segment(utf8_chars(word), index, nullptr);
  if (!seg.ok) throw ValidationError("word cannot be covered by the vocabulary: " + std::string(word));
  return seg.tokens;
}

std::vector<WordCount> unigram_words(std::span<const std::string> corpus) {
  std::map<std::string, double> counts;
  for (const auto& text : corpus) {
    for (const auto& w : split_words(text)) counts[std::string(kWordMarker) + w] += 1.0;
  }
  std::vector<WordCount> out;
  out.reserve(counts.size());
  for (auto& [w, n] : counts) out.push_back({w, n});
  return out;
}

double corpus_log_likelihood(const SubwordVocab& vocab, std::span<const WordCount> words) {
  const Index index(vocab);
  double total = 0.0;
  for (const auto& w : words) {
    const auto seg = segment(utf8_chars(w.word), index, nullptr);
    if (!seg.ok) return -std::numeric_limits<double>::infinity();
    total += w.count * seg.score;
  }
  return total;
}

double removal_loss(const SubwordVocab& vocab, const std::string& token,
                    std::span<const std::string> corpus) {
  if (!vocab.contains(token) || vocab.logprob.count(token) == 0) {
    throw ValidationError("token not in vocabulary: " + token);
  }
  if (is_single_char(token)) throw ValidationError("character-level tokens cannot be removed: " + token);
  const auto words = unigram_words(corpus);
  const Index index(vocab);
  double loss = 0.0;
  for (const auto& w : words) {
    const auto chars = utf8_chars(w.word);
    const auto with = segment(chars, index, nullptr);
    if (!with.ok) continue;
    if (std::find(with.tokens.begin(), with.tokens.end(), token) == with.tokens.end()) continue;
    const auto without = segment(chars, index, &token);
    if (!without.ok) return std::numeric_limits<double>::infinity();
    loss += w.count * (with.score - without.score);
  }
  return std::max(loss, 0.0);
}

void reestimate(SubwordVocab& vocab, std::span<const WordCount> words, int rounds) {
  const auto chars = word_chars(words);
  for (int r = 0; r < rounds; ++r) {
    const Index index(vocab);
    std::map<std::string, double> counts;
    double total = 0.0;
    for (std::size_t i = 0; i < words.size(); ++i) {
      const auto seg = segment(chars[i], index, nullptr);
      if (!seg.ok) continue;
      for (const auto& t : seg.tokens) {
        counts[t] += words[i].count;
        total += words[i].count;
      }
    }
    const double denom = total + kSmoothing * static_cast<double>(vocab.tokens.size());
    for (const auto& t : vocab.tokens) vocab.logprob[t] = std::log((counts[t] + kSmoothing) / denom);
  }
}

SubwordVocab prune_unigram(SubwordVocab vocab, std::span<const std::string> corpus,
                           std::size_t size_limit) {
  const auto n_chars = static_cast<std::size_t>(
      std::count_if(vocab.tokens.begin(), vocab.tokens.end(), is_single_char));
  if (size_limit < n_chars) {
    throw ValidationError("prune_unigram: size_limit " + std::to_string(size_limit) +
                          " is below the character count " + std::to_string(n_chars));
  }
  vocab.size_limit = size_limit;
  if (vocab.tokens.size() <= size_limit) return vocab;

  const auto words = unigram_words(corpus);
  const auto chars = word_chars(words);
  while (vocab.tokens.size() > size_limit) {
    const Index index(vocab);
    std::map<std::string, double> loss;
    for (const auto& t : vocab.tokens) {
      if (!is_single_char(t)) loss[t] = 0.0;
    }
    for (std::size_t i = 0; i < words.size(); ++i) {
      const auto with = segment(chars[i], index, nullptr);
      if (!with.ok) continue;
      std::vector<std::string> used = with.tokens;
      std::sort(used.begin(), used.end());
      used.erase(std::unique(used.begin(), used.end()), used.end());
      for (const auto& t : used) {
        if (is_single_char(t)) continue;
        const auto without = segment(chars[i], index, &t);
        loss[t] += without.ok ? words[i].count * (with.score - without.score)
                              : std::numeric_limits<double>::infinity();
      }
    }
    std::vector<std::pair<double, std::string>> ranked;
    ranked.reserve(loss.size());
    for (const auto& [t, l] : loss) ranked.emplace_back(std::max(l, 0.0), t);
    std::sort(ranked.begin(), ranked.end());
    std::size_t n_drop = std::max<std::size_t>(1, ranked.size() / 10);
    n_drop = std::min({n_drop, vocab.tokens.size() - size_limit, ranked.size()});
    for (std::size_t k = 0; k < n_drop; ++k) {
      const auto& t = ranked[k].second;
      vocab.tokens.erase(std::find(vocab.tokens.begin(), vocab.tokens.end(), t));
      vocab.logprob.erase(t);
    }
    reestimate(vocab, words, 2);
  }
  return vocab;
}

SubwordVocab train_unigram(std::span<const std::string> corpus, std::size_t size_limit) {
  if (corpus.empty()) throw ValidationError("train_unigram: empty corpus");
  const auto words = unigram_words(corpus);
  std::map<std::string, double> char_counts;
  std::map<std::string, double> sub_counts;
  for (const auto& w : words) {
    const auto chars = utf8_chars(w.word);
    for (std::size_t i = 0; i < chars.size(); ++i) {
      char_counts[chars[i]] += w.count;
      std::string piece = chars[i];
      for (std::size_t len = 2; len <= 6 && i + len <= chars.size(); ++len) {
        piece += chars[i + len - 1];
        sub_counts[piece] += w.count;
      }
    }
  }
  if (size_limit < char_counts.size()) {
    throw ValidationError("train_unigram: size_limit is below the character count");
  }
  std::vector<std::pair<double, std::string>> subs;
  for (const auto& [s, n] : sub_counts) {
    if (n >= 2.0) subs.emplace_back(-n, s);
  }
  std::sort(subs.begin(), subs.end());

  SubwordVocab vocab;
  vocab.kind = VocabKind::kUnigram;
  double total = 0.0;
  for (const auto& [c, n] : char_counts) {
    vocab.tokens.push_back(c);
    total += n;
  }
  for (const auto& [neg, s] : subs) {
    vocab.tokens.push_back(s);
    total += -neg;
  }
  for (const auto& [c, n] : char_counts) vocab.logprob[c] = std::log(n / total);
  for (const auto& [neg, s] : subs) vocab.logprob[s] = std::log(-neg / total);
  reestimate(vocab, words, 2);
  vocab.size_limit = std::max(size_limit, vocab.tokens.size());
  vocab = prune_unigram(std::move(vocab), corpus, size_limit);
  return vocab;
}

}  // namespace vulnforge::tokenize
