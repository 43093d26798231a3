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

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace vulnforge::pipeline {

// A parsed configuration document. Grammar, one item per line:
//   # comment                      (also allowed after a value)
//   [section]                      starts a table; keys before any table
//                                  belong to the root table ""
//   key = "string" | 123 | 1.5e-4 | true | false
// Keys are [A-Za-z0-9_]+ and may not repeat within a table.
class ConfigDocument {
 public:
  enum class Type { kString, kInteger, kReal, kBool };
  struct Value {
    Type type;
    std::string text;  // unquoted string, or the literal as written
    int line = 0;
  };

  // Throws ValidationError with the line number on a syntax error.
  static ConfigDocument parse(const std::string& text);

  bool has(const std::string& section, const std::string& key) const;
  std::string get_string(const std::string& section, const std::string& key) const;
  std::int64_t get_int(const std::string& section, const std::string& key) const;
  double get_real(const std::string& section, const std::string& key) const;  // accepts integers
  bool get_bool(const std::string& section, const std::string& key) const;

  // Throws ValidationError if a table holds a key outside `allowed`.
  void check_keys(const std::string& section, const std::vector<std::string>& allowed) const;
  std::vector<std::string> sections() const;

  // Sorted "section.key=type:text" lines, for hashing.
  std::string canonical(const std::vector<std::string>& exclude_keys = {}) const;

 private:
  const Value& at(const std::string& section, const std::string& key) const;
  std::map<std::string, std::map<std::string, Value>> tables_;
};

struct AcquireConfig {
  std::filesystem::path feed;
  std::optional<std::filesystem::path> fixtures;  // offline fixture directory
  int year_lo = 2019;
  int year_hi = 2021;
  std::int64_t max_paragraphs_per_page = 100;
  bool require_valid_tls = true;
  std::int64_t max_concurrent_fetches = 4;
};

struct AugmentConfig {
  std::string name = "dataset";
  std::string policy = "dual";  // single-use | single-mpnet | dual
  std::string use_encoder = "builtin";
  std::string mpnet_encoder = "builtin:384";
  std::int64_t min_words = 20;
};

struct RefineConfig {
  std::string encoder = "builtin";
  double dedup_threshold = 0.98;
  double diversity_threshold = 0.5;
  std::optional<std::int64_t> cap_words;
  std::string normalization = "instance";  // instance | corpus
};

struct TokenizeConfig {
  std::string kind = "bpe";  // bpe | unigram
  std::int64_t vocab_size = 1000;
};

struct TrainStageConfig {
  std::string target = "description";  // description | label
  double lr = 1e-4;
  std::int64_t batch_size = 8;
  std::int64_t epochs = 4;
  std::optional<std::int64_t> max_steps;
  std::int64_t d_model = 64;
  std::int64_t heads = 4;
  std::int64_t layers = 2;
  std::int64_t ffn_dim = 256;
  std::int64_t max_src_len = 500;
  std::int64_t max_tgt_len = 250;
  std::string pos_kind = "learned_absolute";
};

struct EvalConfig {
  std::string strategy = "beam";  // beam | greedy | top_k | nucleus
  std::int64_t beams = 2;
  double length_penalty = 8.0;
  double repetition_penalty = 2.0;
  std::int64_t top_k = 50;
  double top_p = 0.9;
  std::int64_t max_len = 64;
  std::int64_t top_trigrams = 10;
};

struct RunConfig {
  std::uint64_t seed = 42;
  std::filesystem::path output_dir = "out";
  std::optional<std::string> created_at;  // fixed manifest timestamp
  AcquireConfig acquire;
  AugmentConfig augment;
  RefineConfig refine;
  TokenizeConfig tokenize;
  TrainStageConfig train;
  EvalConfig eval;
  // SHA-256 of the canonical document; output_dir does not contribute.
  std::string hash;

  // Relative paths are resolved against base_dir. Throws ValidationError on
  // unknown keys, bad values, or a feed/fixture path that does not exist.
  static RunConfig from_document(const ConfigDocument& doc, const std::filesystem::path& base_dir);
  static RunConfig load(const std::filesystem::path& path);
};

}  // namespace vulnforge::pipeline
