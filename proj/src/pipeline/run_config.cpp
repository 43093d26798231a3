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

#include "vulnforge/pipeline/run_config.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <regex>
#include <sstream>

#include "vulnforge/core/error.hpp"
#include "vulnforge/core/sha256.hpp"
#include "vulnforge/augment/gate.hpp"
#include "vulnforge/seq2seq/config.hpp"

namespace vulnforge::pipeline {
namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

[[noreturn]] void fail(int line, const std::string& msg) {
  throw ValidationError("config line " + std::to_string(line) + ": " + msg);
}

bool valid_key(const std::string& k) {
  return !k.empty() && std::all_of(k.begin(), k.end(), [](unsigned char c) { return std::isalnum(c) || c == '_'; });
}

// Parses the value part of a line; `rest` may carry a trailing comment.
ConfigDocument::Value parse_value(const std::string& rest, int line) {
  ConfigDocument::Value v{ConfigDocument::Type::kString, "", line};
  std::string s = trim(rest);
  if (s.empty()) fail(line, "missing value");
  if (s.front() == '"') {
    std::size_t i = 1;
    bool closed = false;
    for (; i < s.size(); ++i) {
      const char c = s[i];
      if (c == '\\') {
        if (++i >= s.size()) break;
        switch (s[i]) {
          case 'n': v.text += '\n'; break;
          case 't': v.text += '\t'; break;
          case '"': v.text += '"'; break;
          case '\\': v.text += '\\'; break;
          default: fail(line, "unknown escape");
        }
      } else if (c == '"') {
        closed = true;
        break;
      } else {
        v.text += c;
      }
    }
    if (!closed) fail(line, "unterminated string");
    const std::string tail = trim(s.substr(i + 1));
    if (!tail.empty() && tail.front() != '#') fail(line, "unexpected text after string");
    return v;
  }
  const auto hash = s.find('#');
  if (hash != std::string::npos) s = trim(s.substr(0, hash));
  v.text = s;
  static const std::regex kInt(R"([+-]?[0-9]+)");
  static const std::regex kReal(R"([+-]?([0-9]+\.[0-9]*|\.[0-9]+|[0-9]+)([eE][+-]?[0-9]+)?)");
  if (s == "true" || s == "false") {
    v.type = ConfigDocument::Type::kBool;
  } else if (std::regex_match(s, kInt)) {
    v.type = ConfigDocument::Type::kInteger;
  } else if (std::regex_match(s, kReal)) {
    v.type = ConfigDocument::Type::kReal;
  } else {
    fail(line, "cannot parse value '" + s + "' (strings need double quotes)");
  }
  return v;
}

const char* type_name(ConfigDocument::Type t) {
  switch (t) {
    case ConfigDocument::Type::kString: return "string";
    case ConfigDocument::Type::kInteger: return "integer";
    case ConfigDocument::Type::kReal: return "real";
    case ConfigDocument::Type::kBool: return "bool";
  }
  return "?";
}

std::string qualified(const std::string& section, const std::string& key) {
  return section.empty() ? key : section + "." + key;
}

}  // namespace

ConfigDocument ConfigDocument::parse(const std::string& text) {
  ConfigDocument doc;
  doc.tables_[""];
  std::istringstream in(text);
  std::string raw;
  std::string section;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const std::string s = trim(raw);
    if (s.empty() || s.front() == '#') continue;
    if (s.front() == '[') {
      const auto close = s.find(']');
      if (close == std::string::npos) fail(line, "unterminated table header");
      const std::string tail = trim(s.substr(close + 1));
      if (!tail.empty() && tail.front() != '#') fail(line, "unexpected text after table header");
      section = trim(s.substr(1, close - 1));
      if (!valid_key(section)) fail(line, "bad table name");
      if (doc.tables_.count(section) != 0) fail(line, "table [" + section + "] repeated");
      doc.tables_[section];
      continue;
    }
    const auto eq = s.find('=');
    if (eq == std::string::npos) fail(line, "expected key = value");
    const std::string key = trim(s.substr(0, eq));
    if (!valid_key(key)) fail(line, "bad key '" + key + "'");
    auto& table = doc.tables_[section];
    if (table.count(key) != 0) fail(line, "key '" + key + "' repeated");
    table.emplace(key, parse_value(s.substr(eq + 1), line));
  }
  return doc;
}

bool ConfigDocument::has(const std::string& section, const std::string& key) const {
  auto it = tables_.find(section);
  return it != tables_.end() && it->second.count(key) != 0;
}

const ConfigDocument::Value& ConfigDocument::at(const std::string& section, const std::string& key) const {
  auto it = tables_.find(section);
  if (it == tables_.end() || it->second.count(key) == 0) {
    throw ValidationError("config is missing " + qualified(section, key));
  }
  return it->second.at(key);
}

std::string ConfigDocument::get_string(const std::string& section, const std::string& key) const {
  const auto& v = at(section, key);
  if (v.type != Type::kString) fail(v.line, qualified(section, key) + " must be a string");
  return v.text;
}

std::int64_t ConfigDocument::get_int(const std::string& section, const std::string& key) const {
  const auto& v = at(section, key);
  if (v.type != Type::kInteger) fail(v.line, qualified(section, key) + " must be an integer");
  try {
    return std::stoll(v.text);
  } catch (const std::exception&) {
    fail(v.line, qualified(section, key) + " is out of range");
  }
}

double ConfigDocument::get_real(const std::string& section, const std::string& key) const {
  const auto& v = at(section, key);
  if (v.type != Type::kInteger && v.type != Type::kReal) fail(v.line, qualified(section, key) + " must be a number");
  return std::stod(v.text);
}

bool ConfigDocument::get_bool(const std::string& section, const std::string& key) const {
  const auto& v = at(section, key);
  if (v.type != Type::kBool) fail(v.line, qualified(section, key) + " must be true or false");
  return v.text == "true";
}

void ConfigDocument::check_keys(const std::string& section, const std::vector<std::string>& allowed) const {
  auto it = tables_.find(section);
  if (it == tables_.end()) return;
  for (const auto& [key, v] : it->second) {
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
      fail(v.line, "unknown key " + qualified(section, key));
    }
  }
}

std::vector<std::string> ConfigDocument::sections() const {
  std::vector<std::string> out;
  for (const auto& [name, t] : tables_) out.push_back(name);
  return out;
}

std::string ConfigDocument::canonical(const std::vector<std::string>& exclude_keys) const {
  std::string out;
  for (const auto& [section, table] : tables_) {
    for (const auto& [key, v] : table) {
      const auto q = qualified(section, key);
      if (std::find(exclude_keys.begin(), exclude_keys.end(), q) != exclude_keys.end()) continue;
      out += q + "=" + type_name(v.type) + ":" + v.text + "\n";
    }
  }
  return out;
}

RunConfig RunConfig::from_document(const ConfigDocument& doc, const std::filesystem::path& base_dir) {
  for (const auto& s : doc.sections()) {
    static const std::vector<std::string> kKnown = {"", "acquire", "augment", "refine", "tokenize", "train", "eval"};
    if (std::find(kKnown.begin(), kKnown.end(), s) == kKnown.end()) {
      throw ValidationError("unknown config table [" + s + "]");
    }
  }
  doc.check_keys("", {"seed", "output_dir", "created_at"});
  doc.check_keys("acquire", {"feed", "fixtures", "year_lo", "year_hi", "max_paragraphs_per_page",
                             "require_valid_tls", "max_concurrent_fetches"});
  doc.check_keys("augment", {"name", "policy", "use_encoder", "mpnet_encoder", "min_words"});
  doc.check_keys("refine", {"encoder", "dedup_threshold", "diversity_threshold", "cap_words", "normalization"});
  doc.check_keys("tokenize", {"kind", "vocab_size"});
  doc.check_keys("train", {"target", "lr", "batch_size", "epochs", "max_steps", "d_model", "heads", "layers",
                           "ffn_dim", "max_src_len", "max_tgt_len", "pos_kind"});
  doc.check_keys("eval", {"strategy", "beams", "length_penalty", "repetition_penalty", "top_k", "top_p",
                          "max_len", "top_trigrams"});

  auto resolve = [&](const std::string& p) {
    std::filesystem::path path(p);
    return path.is_absolute() ? path : base_dir / path;
  };

  RunConfig c;
  if (doc.has("", "seed")) {
    const auto seed = doc.get_int("", "seed");
    if (seed < 0) throw ValidationError("seed must be >= 0");
    c.seed = static_cast<std::uint64_t>(seed);
  }
  if (doc.has("", "output_dir")) c.output_dir = resolve(doc.get_string("", "output_dir"));
  else c.output_dir = resolve("out");
  if (doc.has("", "created_at")) c.created_at = doc.get_string("", "created_at");

  auto& a = c.acquire;
  a.feed = resolve(doc.get_string("acquire", "feed"));
  if (!std::filesystem::exists(a.feed)) throw ValidationError("feed not found: " + a.feed.string());
  if (doc.has("acquire", "fixtures")) {
    a.fixtures = resolve(doc.get_string("acquire", "fixtures"));
    if (!std::filesystem::is_directory(*a.fixtures)) {
      throw ValidationError("fixture directory not found: " + a.fixtures->string());
    }
  }
  if (doc.has("acquire", "year_lo")) a.year_lo = static_cast<int>(doc.get_int("acquire", "year_lo"));
  if (doc.has("acquire", "year_hi")) a.year_hi = static_cast<int>(doc.get_int("acquire", "year_hi"));
  if (doc.has("acquire", "max_paragraphs_per_page")) a.max_paragraphs_per_page = doc.get_int("acquire", "max_paragraphs_per_page");
  if (doc.has("acquire", "require_valid_tls")) a.require_valid_tls = doc.get_bool("acquire", "require_valid_tls");
  if (doc.has("acquire", "max_concurrent_fetches")) a.max_concurrent_fetches = doc.get_int("acquire", "max_concurrent_fetches");

  auto& g = c.augment;
  if (doc.has("augment", "name")) g.name = doc.get_string("augment", "name");
  if (doc.has("augment", "policy")) g.policy = doc.get_string("augment", "policy");
  augment::policy_from_name(g.policy);
  if (doc.has("augment", "use_encoder")) g.use_encoder = doc.get_string("augment", "use_encoder");
  if (doc.has("augment", "mpnet_encoder")) g.mpnet_encoder = doc.get_string("augment", "mpnet_encoder");
  if (doc.has("augment", "min_words")) g.min_words = doc.get_int("augment", "min_words");
  if (g.min_words < 0) throw ValidationError("augment.min_words must be >= 0");

  auto& r = c.refine;
  if (doc.has("refine", "encoder")) r.encoder = doc.get_string("refine", "encoder");
  if (doc.has("refine", "dedup_threshold")) r.dedup_threshold = doc.get_real("refine", "dedup_threshold");
  if (doc.has("refine", "diversity_threshold")) r.diversity_threshold = doc.get_real("refine", "diversity_threshold");
  if (doc.has("refine", "cap_words")) r.cap_words = doc.get_int("refine", "cap_words");
  if (doc.has("refine", "normalization")) r.normalization = doc.get_string("refine", "normalization");
  if (r.normalization != "instance" && r.normalization != "corpus") {
    throw ValidationError("refine.normalization must be instance or corpus");
  }

  auto& t = c.tokenize;
  if (doc.has("tokenize", "kind")) t.kind = doc.get_string("tokenize", "kind");
  if (doc.has("tokenize", "vocab_size")) t.vocab_size = doc.get_int("tokenize", "vocab_size");
  if (t.kind != "bpe" && t.kind != "unigram") throw ValidationError("tokenize.kind must be bpe or unigram");
  if (t.vocab_size < 1) throw ValidationError("tokenize.vocab_size must be positive");

  auto& m = c.train;
  if (doc.has("train", "target")) m.target = doc.get_string("train", "target");
  if (m.target != "description" && m.target != "label") throw ValidationError("train.target must be description or label");
  if (doc.has("train", "lr")) m.lr = doc.get_real("train", "lr");
  if (doc.has("train", "batch_size")) m.batch_size = doc.get_int("train", "batch_size");
  if (doc.has("train", "epochs")) m.epochs = doc.get_int("train", "epochs");
  if (doc.has("train", "max_steps")) m.max_steps = doc.get_int("train", "max_steps");
  if (doc.has("train", "d_model")) m.d_model = doc.get_int("train", "d_model");
  if (doc.has("train", "heads")) m.heads = doc.get_int("train", "heads");
  if (doc.has("train", "layers")) m.layers = doc.get_int("train", "layers");
  if (doc.has("train", "ffn_dim")) m.ffn_dim = doc.get_int("train", "ffn_dim");
  if (doc.has("train", "max_src_len")) m.max_src_len = doc.get_int("train", "max_src_len");
  if (doc.has("train", "max_tgt_len")) m.max_tgt_len = doc.get_int("train", "max_tgt_len");
  if (doc.has("train", "pos_kind")) m.pos_kind = doc.get_string("train", "pos_kind");
  seq2seq::pos_kind_from_string(m.pos_kind);

  auto& e = c.eval;
  if (doc.has("eval", "strategy")) e.strategy = doc.get_string("eval", "strategy");
  if (doc.has("eval", "beams")) e.beams = doc.get_int("eval", "beams");
  if (doc.has("eval", "length_penalty")) e.length_penalty = doc.get_real("eval", "length_penalty");
  if (doc.has("eval", "repetition_penalty")) e.repetition_penalty = doc.get_real("eval", "repetition_penalty");
  if (doc.has("eval", "top_k")) e.top_k = doc.get_int("eval", "top_k");
  if (doc.has("eval", "top_p")) e.top_p = doc.get_real("eval", "top_p");
  if (doc.has("eval", "max_len")) e.max_len = doc.get_int("eval", "max_len");
  if (doc.has("eval", "top_trigrams")) e.top_trigrams = doc.get_int("eval", "top_trigrams");
  if (e.strategy != "beam" && e.strategy != "greedy" && e.strategy != "top_k" && e.strategy != "nucleus") {
    throw ValidationError("eval.strategy must be beam, greedy, top_k or nucleus");
  }
  if (e.max_len < 1 || e.top_trigrams < 1) throw ValidationError("eval.max_len and eval.top_trigrams must be positive");

  c.hash = sha256_hex(doc.canonical({"output_dir"}));
  return c;
}

RunConfig RunConfig::load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw NotFoundError("cannot read config " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return from_document(ConfigDocument::parse(ss.str()), path.parent_path());
}

}  // namespace vulnforge::pipeline
