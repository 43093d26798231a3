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

#include "vulnforge/seq2seq/checkpoint.hpp"

#include <fstream>

#include "vulnforge/core/error.hpp"

namespace vulnforge::seq2seq {
namespace {

constexpr const char* kFormat = "vulnforge-seq2seq";

}  // namespace

void save_checkpoint(const std::string& path, const Checkpoint& ckpt) {
  nlohmann::json tensors = nlohmann::json::object();
  visit_params(ckpt.params, [&](const std::string& name, const Matrix& m) {
    std::vector<double> data;
    data.reserve(static_cast<std::size_t>(m.size()));
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
      for (Eigen::Index j = 0; j < m.cols(); ++j) data.push_back(m(i, j));
    }
    tensors[name] = {{"rows", m.rows()}, {"cols", m.cols()}, {"data", std::move(data)}};
  });
  const nlohmann::json j = {{"format", kFormat},
                            {"version", kCheckpointVersion},
                            {"config", ckpt.config},
                            {"vocab", ckpt.vocab},
                            {"tensors", std::move(tensors)}};
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path);
  out << j.dump() << '\n';
}

Checkpoint load_checkpoint(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw NotFoundError("cannot read " + path);
  const auto j = nlohmann::json::parse(in);
  if (j.value("format", std::string()) != kFormat) throw ValidationError("not a model checkpoint: " + path);
  if (j.value("version", 0) != kCheckpointVersion) {
    throw ValidationError("unsupported checkpoint version in " + path);
  }
  Checkpoint ckpt;
  ckpt.config = j.at("config").get<ModelConfig>();
  ckpt.vocab = j.at("vocab").get<tokenize::SubwordVocab>();
  ckpt.params = init_params(ckpt.config);
  const auto& tensors = j.at("tensors");
  visit_params(ckpt.params, [&](const std::string& name, Matrix& m) {
    if (!tensors.contains(name)) throw ValidationError("checkpoint lacks tensor " + name);
    const auto& t = tensors.at(name);
    if (t.at("rows").get<Eigen::Index>() != m.rows() || t.at("cols").get<Eigen::Index>() != m.cols()) {
      throw ValidationError("tensor " + name + " has the wrong shape");
    }
    const auto& data = t.at("data");
    if (static_cast<Eigen::Index>(data.size()) != m.size()) throw ValidationError("tensor " + name + " is truncated");
    std::size_t k = 0;
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
      for (Eigen::Index c = 0; c < m.cols(); ++c) m(i, c) = data[k++].get<double>();
    }
  });
  return ckpt;
}

}  // namespace vulnforge::seq2seq
