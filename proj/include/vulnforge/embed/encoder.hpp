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
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace vulnforge::embed {

struct EmbeddingVector {
  std::vector<double> values;
  std::string encoder_id;

  std::size_t dimension() const { return values.size(); }
  bool operator==(const EmbeddingVector&) const = default;
};

enum class EncoderKind { kBuiltinHashBow, kRemote };

struct EncoderSpec {
  std::string encoder_id = "builtin";
  EncoderKind kind = EncoderKind::kBuiltinHashBow;
  std::size_t dimension = 256;
  std::optional<std::string> endpoint;  // remote only
  std::size_t batch_size = 64;          // remote only
  int timeout_ms = 30000;               // remote only

  // "builtin", "builtin:<dim>" or "remote:<url>[#<dim>]".
  static EncoderSpec parse(const std::string& text);
  void validate() const;
};

class Encoder {
 public:
  virtual ~Encoder() = default;
  virtual const EncoderSpec& spec() const = 0;
  // One L2-normalized vector per text, in input order.
  virtual std::vector<EmbeddingVector> encode(std::span<const std::string> texts) = 0;

  EmbeddingVector encode_one(const std::string& text);
};

// Hashed bag-of-words. Tokens are the ASCII-lowercased whitespace tokens;
// each adds sign(h) to bucket h % dimension where h = mix64(fnv1a64(token)
// seeded) and sign is the top bit of h. Texts with no tokens map to e_0.
class BuiltinEncoder : public Encoder {
 public:
  explicit BuiltinEncoder(EncoderSpec spec);
  const EncoderSpec& spec() const override { return spec_; }
  std::vector<EmbeddingVector> encode(std::span<const std::string> texts) override;

  static std::uint64_t token_hash(std::string_view token);

 private:
  EncoderSpec spec_;
};

// Client for an embedding service speaking
//   POST {"texts": [...]}  ->  {"vectors": [[...], ...]}
// Vectors are re-normalized on arrival. Throws TransportError when the
// service cannot be reached and ContractError on a malformed reply.
class RemoteEncoder : public Encoder {
 public:
  explicit RemoteEncoder(EncoderSpec spec);
  const EncoderSpec& spec() const override { return spec_; }
  std::vector<EmbeddingVector> encode(std::span<const std::string> texts) override;

 private:
  EncoderSpec spec_;
};

std::unique_ptr<Encoder> make_encoder(const EncoderSpec& spec);

std::vector<EmbeddingVector> encode(std::span<const std::string> texts, const EncoderSpec& spec);

// v.w / (|v| |w|), clamped to [-1, 1]. Throws ValidationError on encoder or
// dimension mismatch and on zero vectors.
double cosine(const EmbeddingVector& a, const EmbeddingVector& b);

// Cosine over raw values with the same error rules.
double cosine(std::span<const double> a, std::span<const double> b);

void l2_normalize(std::vector<double>& v);

}  // namespace vulnforge::embed
