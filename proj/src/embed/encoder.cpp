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

#include "vulnforge/embed/encoder.hpp"

#include <algorithm>
#include <cmath>

#include "vulnforge/core/error.hpp"

namespace vulnforge::embed {

EncoderSpec EncoderSpec::parse(const std::string& text) {
  EncoderSpec spec;
  if (text == "builtin") return spec;
  if (text.rfind("builtin:", 0) == 0) {
    spec.dimension = std::stoul(text.substr(8));
    spec.encoder_id = "builtin-" + std::to_string(spec.dimension);
    spec.validate();
    return spec;
  }
  if (text.rfind("remote:", 0) == 0) {
    auto url = text.substr(7);
    spec.kind = EncoderKind::kRemote;
    if (const auto hash = url.rfind('#'); hash != std::string::npos) {
      spec.dimension = std::stoul(url.substr(hash + 1));
      url.resize(hash);
    }
    spec.endpoint = url;
    spec.encoder_id = "remote:" + url;
    spec.validate();
    return spec;
  }
  throw ValidationError("unknown encoder spec: " + text);
}

void EncoderSpec::validate() const {
  if (dimension == 0) throw ValidationError("encoder dimension must be positive");
  if (encoder_id.empty()) throw ValidationError("encoder_id must be non-empty");
  if (kind == EncoderKind::kRemote && (!endpoint || endpoint->empty())) {
    throw ValidationError("remote encoder requires an endpoint");
  }
}

EmbeddingVector Encoder::encode_one(const std::string& text) {
  auto v = encode(std::span<const std::string>(&text, 1));
  return std::move(v.front());
}

std::unique_ptr<Encoder> make_encoder(const EncoderSpec& spec) {
  spec.validate();
  if (spec.kind == EncoderKind::kRemote) return std::make_unique<RemoteEncoder>(spec);
  return std::make_unique<BuiltinEncoder>(spec);
}

std::vector<EmbeddingVector> encode(std::span<const std::string> texts, const EncoderSpec& spec) {
  return make_encoder(spec)->encode(texts);
}

void l2_normalize(std::vector<double>& v) {
  double norm = 0.0;
  for (double x : v) norm += x * x;
  norm = std::sqrt(norm);
  if (norm == 0.0) {
    std::fill(v.begin(), v.end(), 0.0);
    if (!v.empty()) v[0] = 1.0;
    return;
  }
  for (double& x : v) x /= norm;
}

double cosine(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw ValidationError("cosine: dimension mismatch");
  double dot = 0.0;
  double na = 0.0;
  double nb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!std::isfinite(a[i]) || !std::isfinite(b[i])) throw ValidationError("cosine: non-finite entry");
    dot += a[i] * b[i];
    na += a[i] * a[i];
    nb += b[i] * b[i];
  }
  if (na == 0.0 || nb == 0.0) throw ValidationError("cosine: undefined for a zero vector");
  return std::clamp(dot / (std::sqrt(na) * std::sqrt(nb)), -1.0, 1.0);
}

double cosine(const EmbeddingVector& a, const EmbeddingVector& b) {
  if (a.encoder_id != b.encoder_id) throw ValidationError("cosine: vectors from different encoders");
  return cosine(std::span<const double>(a.values), std::span<const double>(b.values));
}

}  // namespace vulnforge::embed
