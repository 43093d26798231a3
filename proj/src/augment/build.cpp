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

#include "vulnforge/augment/build.hpp"

#include <algorithm>

#include "vulnforge/augment/gate.hpp"
#include "vulnforge/core/error.hpp"
#include "vulnforge/core/timestamp.hpp"

namespace vulnforge::augment {

std::vector<Paragraph> prepare_paragraphs(std::span<const Paragraph> raw,
                                          const textprep::CleanPolicy& policy) {
  std::vector<Paragraph> out;
  for (auto p : raw) {
    textprep::clean_paragraph(p, policy);
    if (textprep::passes_length_gate(p, policy)) out.push_back(std::move(p));
  }
  return out;
}

namespace {

std::string with_period(const std::string& text) {
  if (!text.empty() && text.back() == '.') return text;
  return text + ".";
}

}  // namespace

BuildOutcome build_dataset(std::span<const VulnRecord> records,
                           std::span<const std::vector<Paragraph>> paragraphs,
                           const GatePolicy& policy, const EncoderSet& encoders,
                           const BuildOptions& options) {
  if (records.size() != paragraphs.size()) {
    throw ValidationError("build_dataset: paragraphs must align with records");
  }
  validate_policy(policy);
  const auto roles = required_encoders(policy);
  for (const auto& role : roles) {
    auto it = encoders.find(role);
    if (it == encoders.end() || it->second == nullptr) {
      throw PolicyError("no encoder supplied for role '" + role + "'");
    }
  }

  BuildOutcome out;
  out.manifest = DatasetManifest(options.name, policy, Stage::kRaw,
                                 options.created_at.empty() ? now_rfc3339() : options.created_at);

  for (std::size_t r = 0; r < records.size(); ++r) {
    const auto& rec = records[r];
    if (rec.references.empty() || paragraphs[r].empty()) continue;

    std::vector<Paragraph> ordered(paragraphs[r].begin(), paragraphs[r].end());
    auto ref_pos = [&](const std::string& url) {
      auto it = std::find(rec.references.begin(), rec.references.end(), url);
      return static_cast<std::size_t>(it - rec.references.begin());
    };
    std::stable_sort(ordered.begin(), ordered.end(), [&](const Paragraph& a, const Paragraph& b) {
      const auto pa = ref_pos(a.source_url);
      const auto pb = ref_pos(b.source_url);
      return pa != pb ? pa < pb : a.index < b.index;
    });

    std::vector<std::string> texts;
    texts.reserve(ordered.size() + 1);
    texts.push_back(rec.description);
    for (const auto& p : ordered) texts.push_back(p.cleaned);

    std::vector<std::map<std::string, double>> scores(ordered.size());
    try {
      for (const auto& role : roles) {
        const auto vecs = encoders.at(role)->encode(texts);
        if (vecs.size() != texts.size()) throw ContractError("encoder returned wrong count");
        for (std::size_t i = 0; i < ordered.size(); ++i) {
          scores[i][role] = embed::cosine(vecs[i + 1], vecs[0]);
        }
      }
    } catch (const Error& e) {
      out.warnings.push_back(rec.cve_id + ": encoder failure, record skipped (" + e.what() + ")");
      continue;
    }

    AugmentedInstance inst;
    inst.cve_id = rec.cve_id;
    inst.description = rec.description;
    for (std::size_t i = 0; i < ordered.size(); ++i) {
      if (!gate_paragraph(scores[i], policy)) continue;
      if (!inst.augmented_text.empty()) inst.augmented_text += ' ';
      inst.augmented_text += with_period(ordered[i].cleaned);
      inst.sources.push_back({ordered[i].source_url, ordered[i].index, scores[i]});
    }
    if (inst.sources.empty()) continue;
    out.manifest.add(std::move(inst));
  }
  return out;
}

}  // namespace vulnforge::augment
