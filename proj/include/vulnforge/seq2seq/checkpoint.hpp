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

#include <string>

#include "vulnforge/seq2seq/params.hpp"
#include "vulnforge/tokenize/vocab.hpp"

namespace vulnforge::seq2seq {

inline constexpr int kCheckpointVersion = 1;

struct Checkpoint {
  ModelConfig config;
  tokenize::SubwordVocab vocab;
  Params params;
};

// JSON archive: {"format", "version", "config", "vocab", "tensors"} with
// each tensor stored as {rows, cols, data} in row-major order.
void save_checkpoint(const std::string& path, const Checkpoint& ckpt);
// Throws ValidationError on a version or shape mismatch.
Checkpoint load_checkpoint(const std::string& path);

}  // namespace vulnforge::seq2seq
