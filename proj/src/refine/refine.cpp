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

#include "vulnforge/refine/refine.hpp"

#include <cmath>

#include "vulnforge/core/error.hpp"
#include "vulnforge/textprep/sentences.hpp"
#include "vulnforge/textprep/tokens.hpp"

namespace vulnforge::refine {

void RefinePolicy::validate() const {
  auto in_unit = [](double t) { return t > 0.0 && t <= 1.0; };
  if (!in_unit(dedup_threshold)) throw ValidationError("dedup_threshold must lie in (0, 1]");
  if (!in_unit(diversity_threshold)) throw ValidationError("diversity_threshold must lie in (0, 1]");
  if (cap_words && *cap_words < 1) throw ValidationError("cap_words must be >= 1");
}

namespace {

std::string without_trailing_periods(const std::string& s) {
  auto end = s.find_last_not_of('.');
  return end == std::string::npos ? std::string{} : s.substr(0, end + 1);
}

}  // namespace

std::vector<std::string> dedup_sentences(std::span<const std::string> sentences,
                                         embed::Encoder& encoder, double threshold) {
  std::vector<std::string> bodies;
  bodies.reserve(sentences.size());
  for (const auto& s : sentences) bodies.push_back(without_trailing_periods(s));
  const auto vecs = encoder.encode(bodies);

  std::vector<std::string> out;
  std::vector<std::size_t> kept;
  for (std::size_t i = 0; i < sentences.size(); ++i) {
    bool keep = true;
    for (auto k : kept) {
      if (embed::cosine(vecs[i], vecs[k]) >= threshold) {
        keep = false;
        break;
      }
    }
    if (keep) {
      kept.push_back(i);
      out.push_back(sentences[i]);
    }
  }
  return out;
}

std::vector<std::string> sentence_tokens(const std::string& sentence) {
  return textprep::filter_tokens(textprep::word_tokens(sentence));
}

WordTotals word_totals(std::span<const std::vector<std::string>> token_lists) {
  WordTotals totals;
  for (const auto& tokens : token_lists) {
    for (const auto& t : tokens) totals[t] += 1.0;
  }
  return totals;
}

FreqVectors freq_vectors(std::span<const std::vector<std::string>> token_lists,
                         const WordTotals* totals) {
  WordTotals local;
  if (totals == nullptr) {
    local = word_totals(token_lists);
    totals = &local;
  }
  FreqVectors out;
  for (std::size_t i = 0; i < token_lists.size(); ++i) {
    if (token_lists[i].empty()) {
      out.dropped.push_back(i);
      continue;
    }
    std::map<std::string, double> counts;
    for (const auto& t : token_lists[i]) counts[t] += 1.0;
    FreqVector v;
    for (const auto& [word, count] : counts) {
      auto it = totals->find(word);
      const double total = it == totals->end() ? count : std::max(it->second, count);
      v.entries[word] = count / total;
    }
    out.vectors.push_back(std::move(v));
    out.kept.push_back(i);
  }
  return out;
}

double freq_cosine(const FreqVector& a, const FreqVector& b) {
  double dot = 0.0;
  double na = 0.0;
  double nb = 0.0;
  for (const auto& [w, x] : a.entries) {
    na += x * x;
    auto it = b.entries.find(w);
    if (it != b.entries.end()) dot += x * it->second;
  }
  for (const auto& [w, y] : b.entries) nb += y * y;
  if (na == 0.0 || nb == 0.0) return 0.0;
  return dot / (std::sqrt(na) * std::sqrt(nb));
}

std::vector<std::string> diversity_filter(std::span<const std::string> sentences,
                                          std::span<const FreqVector> vectors,
                                          const RefinePolicy& policy) {
  if (sentences.size() != vectors.size()) {
    throw ValidationError("diversity_filter: vectors must align with sentences");
  }
  std::vector<std::string> out;
  std::vector<std::size_t> kept;
  std::size_t words = 0;
  for (std::size_t i = 0; i < sentences.size(); ++i) {
    bool keep = true;
    for (auto k : kept) {
      if (freq_cosine(vectors[i], vectors[k]) >= policy.diversity_threshold) {
        keep = false;
        break;
      }
    }
    const auto n_words = count_words(sentences[i]);
    if (keep && policy.cap_words && words + n_words > *policy.cap_words) keep = false;
    if (!keep) continue;
    kept.push_back(i);
    words += n_words;
    out.push_back(sentences[i]);
  }
  return out;
}

std::optional<AugmentedInstance> refine_instance(const AugmentedInstance& inst,
                                                 const RefinePolicy& policy,
                                                 embed::Encoder& encoder,
                                                 const WordTotals* corpus_totals) {
  policy.validate();
  auto current = dedup_sentences(textprep::split_sentences(inst.augmented_text), encoder,
                                 policy.dedup_threshold);
  while (true) {
    std::vector<std::vector<std::string>> tokens;
    tokens.reserve(current.size());
    for (const auto& s : current) tokens.push_back(sentence_tokens(s));
    const auto fv = freq_vectors(tokens, corpus_totals);
    std::vector<std::string> candidates;
    candidates.reserve(fv.kept.size());
    for (auto i : fv.kept) candidates.push_back(current[i]);
    auto kept = diversity_filter(candidates, fv.vectors, policy);
    if (kept.size() == current.size()) break;
    current = std::move(kept);
  }
  if (current.empty()) return std::nullopt;

  AugmentedInstance out = inst;
  out.augmented_text = textprep::join_sentences(current);
  if (out.augmented_text.back() != '.') out.augmented_text += '.';
  return out;
}

RefineOutcome refine_manifest(const DatasetManifest& in, const RefinePolicy& policy,
                              embed::Encoder& encoder) {
  policy.validate();
  const Stage target = policy.cap_words ? Stage::kRefinedCapped : Stage::kRefined;
  if (target != in.stage && !stage_transition_allowed(in.stage, target)) {
    throw ValidationError(std::string("cannot refine a ") + to_string(in.stage) + " manifest into " +
                          to_string(target));
  }
  WordTotals corpus;
  if (policy.normalization == Normalization::kCorpus) {
    std::vector<std::vector<std::string>> all;
    for (const auto& inst : in.instances()) {
      for (const auto& s : textprep::split_sentences(inst.augmented_text)) {
        all.push_back(sentence_tokens(s));
      }
    }
    corpus = word_totals(all);
  }

  RefineOutcome out;
  out.manifest = DatasetManifest(in.name, in.encoder_policy, target, in.created_at);
  out.manifest.config_hash = in.config_hash;
  for (const auto& inst : in.instances()) {
    auto refined = refine_instance(inst, policy, encoder,
                                   policy.normalization == Normalization::kCorpus ? &corpus : nullptr);
    if (!refined) {
      out.warnings.push_back(inst.cve_id + ": every sentence filtered out, instance dropped");
      continue;
    }
    out.manifest.add(std::move(*refined));
  }
  return out;
}

}  // namespace vulnforge::refine
