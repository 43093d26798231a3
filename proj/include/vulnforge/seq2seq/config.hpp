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
#include <optional>
#include <string>

#include <json.hpp>

namespace vulnforge::seq2seq {

// kNone exists for ablation; it removes all position information.
enum class PosKind { kNone, kLearnedAbsolute, kRelative };
enum class FfnActivation { kGelu, kIdentity };

std::string to_string(PosKind kind);
PosKind pos_kind_from_string(const std::string& s);

// Relative distances are clipped to [-kRelativeWindow, kRelativeWindow].
inline constexpr int kRelativeWindow = 8;

struct ModelConfig {
  int vocab_size = 0;  // including the reserved special ids
  int d_model = 64;
  int heads = 4;
  int layers = 2;  // encoder and decoder each
  int ffn_dim = 256;
  int max_src_len = 500;
  int max_tgt_len = 250;
  PosKind pos_kind = PosKind::kLearnedAbsolute;
  FfnActivation activation = FfnActivation::kGelu;
  std::uint64_t seed = 42;

  int head_dim() const { return d_model / heads; }
  // Throws ValidationError when an invariant does not hold.
  void validate() const;
  bool operator==(const ModelConfig&) const = default;
};

struct TrainConfig {
  double lr = 1e-4;
  int batch_size = 8;
  int epochs = 4;
  double length_penalty = 8.0;
  double repetition_penalty = 2.0;
  int beams = 2;
  double test_frac = 0.10;
  double val_frac = 0.10;
  std::optional<std::size_t> max_steps;
  std::uint64_t seed = 42;

  // lr may be zero; every other numeric field must be positive.
  void validate() const;
};

void to_json(nlohmann::json& j, const ModelConfig& c);
void from_json(const nlohmann::json& j, ModelConfig& c);

}  // namespace vulnforge::seq2seq
