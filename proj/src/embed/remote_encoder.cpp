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

#include <regex>

#include <httplib.h>
#include <json.hpp>

#include "vulnforge/core/error.hpp"
#include "vulnforge/embed/encoder.hpp"

namespace vulnforge::embed {

RemoteEncoder::RemoteEncoder(EncoderSpec spec) : spec_(std::move(spec)) { spec_.validate(); }

std::vector<EmbeddingVector> RemoteEncoder::encode(std::span<const std::string> texts) {
  static const std::regex kUrl(R"(^(https?://[^/]+)(/.*)?$)", std::regex::icase);
  std::smatch m;
  if (!std::regex_match(*spec_.endpoint, m, kUrl)) {
    throw ValidationError("bad encoder endpoint: " + *spec_.endpoint);
  }
  const std::string base = m[1].str();
  const std::string path = m[2].matched ? m[2].str() : "/";

  httplib::Client client(base);
  const auto timeout = std::chrono::milliseconds(spec_.timeout_ms);
  client.set_connection_timeout(timeout);
  client.set_read_timeout(timeout);

  std::vector<EmbeddingVector> out;
  out.reserve(texts.size());
  const std::size_t batch = std::max<std::size_t>(spec_.batch_size, 1);
  for (std::size_t start = 0; start < texts.size(); start += batch) {
    const auto end = std::min(texts.size(), start + batch);
    nlohmann::json req = {{"texts", nlohmann::json::array()}};
    for (std::size_t i = start; i < end; ++i) req["texts"].push_back(texts[i]);
    auto res = client.Post(path, req.dump(), "application/json");
    if (!res) throw TransportError("embedding service unreachable: " + httplib::to_string(res.error()));
    if (res->status != 200) {
      throw TransportError("embedding service returned HTTP " + std::to_string(res->status));
    }
    nlohmann::json reply;
    try {
      reply = nlohmann::json::parse(res->body);
    } catch (const nlohmann::json::exception& e) {
      throw ContractError(std::string("embedding service reply is not JSON: ") + e.what());
    }
    if (!reply.contains("vectors") || !reply["vectors"].is_array() ||
        reply["vectors"].size() != end - start) {
      throw ContractError("embedding service returned the wrong number of vectors");
    }
    for (const auto& row : reply["vectors"]) {
      if (!row.is_array() || row.size() != spec_.dimension) {
        throw ContractError("embedding service returned a vector of dimension " +
                            std::to_string(row.is_array() ? row.size() : 0) + ", expected " +
                            std::to_string(spec_.dimension));
      }
      std::vector<double> v;
      v.reserve(row.size());
      for (const auto& x : row) {
        if (!x.is_number()) throw ContractError("embedding service returned a non-numeric entry");
        v.push_back(x.get<double>());
      }
      l2_normalize(v);
      out.push_back({std::move(v), spec_.encoder_id});
    }
  }
  return out;
}

}  // namespace vulnforge::embed
