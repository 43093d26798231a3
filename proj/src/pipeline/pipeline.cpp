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

#include "vulnforge/pipeline/pipeline.hpp"

#include <fstream>
#include <ostream>
#include <sstream>

#include "vulnforge/acquire/feed.hpp"
#include "vulnforge/acquire/fetcher.hpp"
#include "vulnforge/acquire/scrape.hpp"
#include "vulnforge/augment/build.hpp"
#include "vulnforge/augment/gate.hpp"
#include "vulnforge/core/error.hpp"
#include "vulnforge/core/manifest.hpp"
#include "vulnforge/core/sha256.hpp"
#include "vulnforge/core/timestamp.hpp"
#include "vulnforge/embed/encoder.hpp"
#include "vulnforge/evalkit/entities.hpp"
#include "vulnforge/evalkit/rouge.hpp"
#include "vulnforge/evalkit/similarity.hpp"
#include "vulnforge/evalkit/stats.hpp"
#include "vulnforge/refine/refine.hpp"
#include "vulnforge/seq2seq/checkpoint.hpp"
#include "vulnforge/seq2seq/generate.hpp"
#include "vulnforge/seq2seq/train.hpp"
#include "vulnforge/tokenize/bpe.hpp"
#include "vulnforge/tokenize/token_index.hpp"
#include "vulnforge/tokenize/unigram.hpp"

namespace vulnforge::pipeline {
namespace {

namespace fs = std::filesystem;

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw NotFoundError("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_json(const fs::path& path, const nlohmann::json& j) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  out << j.dump(2) << '\n';
}

void record_output(StageResult& r, const fs::path& dir, const std::string& file) {
  r.outputs[file] = sha256_file_hex((dir / file).string());
}

acquire::FetchPolicy fetch_policy(const RunConfig& c) {
  acquire::FetchPolicy p;
  p.year_lo = c.acquire.year_lo;
  p.year_hi = c.acquire.year_hi;
  p.max_paragraphs_per_page = static_cast<std::size_t>(c.acquire.max_paragraphs_per_page);
  p.require_valid_tls = c.acquire.require_valid_tls;
  p.max_concurrent_fetches = static_cast<std::size_t>(c.acquire.max_concurrent_fetches);
  p.validate();
  return p;
}

std::string created_at(const RunConfig& c) { return c.created_at ? *c.created_at : now_rfc3339(); }

seq2seq::ModelConfig model_config(const RunConfig& c, int vocab_size) {
  seq2seq::ModelConfig m;
  m.vocab_size = vocab_size;
  m.d_model = static_cast<int>(c.train.d_model);
  m.heads = static_cast<int>(c.train.heads);
  m.layers = static_cast<int>(c.train.layers);
  m.ffn_dim = static_cast<int>(c.train.ffn_dim);
  m.max_src_len = static_cast<int>(c.train.max_src_len);
  m.max_tgt_len = static_cast<int>(c.train.max_tgt_len);
  m.pos_kind = seq2seq::pos_kind_from_string(c.train.pos_kind);
  m.seed = c.seed;
  m.validate();
  return m;
}

seq2seq::TrainConfig train_config(const RunConfig& c) {
  seq2seq::TrainConfig t;
  t.lr = c.train.lr;
  t.batch_size = static_cast<int>(c.train.batch_size);
  t.epochs = static_cast<int>(c.train.epochs);
  if (c.train.max_steps) t.max_steps = static_cast<std::size_t>(*c.train.max_steps);
  t.length_penalty = c.eval.length_penalty;
  t.repetition_penalty = c.eval.repetition_penalty;
  t.beams = static_cast<int>(c.eval.beams);
  t.seed = c.seed;
  t.validate();
  return t;
}

seq2seq::DecodeConfig decode_config(const RunConfig& c) {
  seq2seq::DecodeConfig d;
  const auto& s = c.eval.strategy;
  d.strategy = s == "greedy"  ? seq2seq::Strategy::kGreedy
               : s == "top_k" ? seq2seq::Strategy::kTopK
               : s == "nucleus" ? seq2seq::Strategy::kNucleus
                                : seq2seq::Strategy::kBeam;
  d.beams = static_cast<int>(c.eval.beams);
  d.length_penalty = c.eval.length_penalty;
  d.repetition_penalty = c.eval.repetition_penalty;
  d.top_k = static_cast<int>(c.eval.top_k);
  d.top_p = c.eval.top_p;
  d.max_len = static_cast<std::size_t>(c.eval.max_len);
  d.seed = c.seed;
  d.validate();
  return d;
}

void stage_ingest(const RunConfig& c, const fs::path& dir, StageResult& r) {
  std::vector<std::string> warnings;
  const auto records = acquire::ingest_feed(read_file(c.acquire.feed), fetch_policy(c), &warnings);
  acquire::write_records((dir / kRecordsFile).string(), records);
  record_output(r, dir, kRecordsFile);
  r.summary = {{"records", records.size()}, {"warnings", warnings.size()}};
}

void stage_scrape(const RunConfig& c, const fs::path& dir, StageResult& r) {
  const auto records = acquire::read_records((dir / kRecordsFile).string());
  const auto policy = fetch_policy(c);
  auto fetcher = acquire::make_fetcher(c.acquire.fixtures ? c.acquire.fixtures->string() : "", policy);
  std::vector<std::string> warnings;
  const auto data = acquire::scrape_all(records, policy, *fetcher, &warnings);
  acquire::write_paragraphs((dir / kParagraphsFile).string(), data);
  std::size_t n = 0;
  for (const auto& d : data) n += d.paragraphs.size();
  record_output(r, dir, kParagraphsFile);
  r.summary = {{"paragraphs", n}, {"warnings", warnings.size()}};
}

void stage_build(const RunConfig& c, const fs::path& dir, StageResult& r) {
  const auto records = acquire::read_records((dir / kRecordsFile).string());
  const auto scraped = acquire::read_paragraphs((dir / kParagraphsFile).string());
  std::map<std::string, const std::vector<Paragraph>*> by_id;
  for (const auto& s : scraped) by_id[s.cve_id] = &s.paragraphs;
  textprep::CleanPolicy clean;
  clean.min_words = static_cast<std::size_t>(c.augment.min_words);
  std::vector<std::vector<Paragraph>> paragraphs;
  for (const auto& rec : records) {
    auto it = by_id.find(rec.cve_id);
    paragraphs.push_back(it == by_id.end() ? std::vector<Paragraph>{}
                                           : augment::prepare_paragraphs(*it->second, clean));
  }
  const auto policy = augment::policy_from_name(c.augment.policy);
  auto use = embed::make_encoder(embed::EncoderSpec::parse(c.augment.use_encoder));
  auto mpnet = embed::make_encoder(embed::EncoderSpec::parse(c.augment.mpnet_encoder));
  augment::EncoderSet encoders{{kUseRole, use.get()}, {kMpnetRole, mpnet.get()}};
  augment::BuildOptions opts{c.augment.name, created_at(c)};
  auto out = augment::build_dataset(records, paragraphs, policy, encoders, opts);
  out.manifest.config_hash = c.hash;
  save_manifest((dir / kRawManifestFile).string(), out.manifest);
  record_output(r, dir, kRawManifestFile);
  r.summary = {{"instances", out.manifest.size()}, {"warnings", out.warnings.size()}};
}

void stage_refine(const RunConfig& c, const fs::path& dir, StageResult& r) {
  const auto raw = load_manifest((dir / kRawManifestFile).string());
  refine::RefinePolicy policy;
  policy.dedup_threshold = c.refine.dedup_threshold;
  policy.diversity_threshold = c.refine.diversity_threshold;
  if (c.refine.cap_words) policy.cap_words = static_cast<std::size_t>(*c.refine.cap_words);
  policy.normalization =
      c.refine.normalization == "corpus" ? refine::Normalization::kCorpus : refine::Normalization::kPerInstance;
  auto encoder = embed::make_encoder(embed::EncoderSpec::parse(c.refine.encoder));
  auto out = refine::refine_manifest(raw, policy, *encoder);
  out.manifest.config_hash = c.hash;
  save_manifest((dir / kRefinedManifestFile).string(), out.manifest);
  record_output(r, dir, kRefinedManifestFile);
  r.summary = {{"instances", out.manifest.size()}, {"warnings", out.warnings.size()}};
}

void stage_tokenize(const RunConfig& c, const fs::path& dir, StageResult& r) {
  const auto m = load_manifest((dir / kRefinedManifestFile).string());
  std::vector<std::string> corpus;
  for (const auto& inst : m.instances()) {
    corpus.push_back(inst.augmented_text);
    corpus.push_back(inst.description);
    if (inst.label) corpus.push_back(*inst.label);
  }
  const auto size = static_cast<std::size_t>(c.tokenize.vocab_size);
  const auto vocab = c.tokenize.kind == "bpe" ? tokenize::train_bpe(corpus, size)
                                               : tokenize::train_unigram(corpus, size);
  tokenize::save_vocab((dir / kVocabFile).string(), vocab);
  record_output(r, dir, kVocabFile);
  r.summary = {{"kind", c.tokenize.kind}, {"tokens", vocab.tokens.size()}};
}

void stage_train(const RunConfig& c, const fs::path& dir, StageResult& r) {
  const auto m = load_manifest((dir / kRefinedManifestFile).string());
  const tokenize::TokenIndex index(tokenize::load_vocab((dir / kVocabFile).string()));
  const auto field = c.train.target == "label" ? seq2seq::TargetField::kLabel : seq2seq::TargetField::kDescription;
  const auto mcfg = model_config(c, static_cast<int>(index.size()));
  const auto out = seq2seq::train(m, field, index, train_config(c), mcfg);
  seq2seq::save_checkpoint((dir / kModelFile).string(), {mcfg, index.vocab(), out.result.params});
  std::vector<std::string> test_ids;
  for (auto i : out.split.test) test_ids.push_back(m.instances()[out.instance_of[i]].cve_id);
  const nlohmann::json report = {{"config_hash", c.hash},
                                 {"target", c.train.target},
                                 {"steps", out.result.steps},
                                 {"train_loss", out.result.train_loss},
                                 {"val_loss", out.result.val_loss},
                                 {"val_accuracy", out.result.val_accuracy},
                                 {"split", {{"train", out.split.train.size()},
                                            {"val", out.split.val.size()},
                                            {"test", out.split.test.size()}}},
                                 {"test_ids", test_ids}};
  write_json(dir / kTrainReportFile, report);
  record_output(r, dir, kModelFile);
  record_output(r, dir, kTrainReportFile);
  r.summary = {{"steps", out.result.steps}, {"examples", out.examples.size()}};
}

nlohmann::json stats_json(const evalkit::CorpusStats& s) {
  nlohmann::json hist = nlohmann::json::object();
  for (std::size_t b = 0; b < s.histogram.size(); ++b) hist[evalkit::length_bucket_label(b)] = s.histogram[b];
  auto ms = [](const evalkit::MeanStd& m) { return nlohmann::json{{"mean", m.mean}, {"std", m.std}}; };
  return {{"texts", s.texts}, {"words", ms(s.words)}, {"chars", ms(s.chars)},
          {"sentences", ms(s.sentences)}, {"histogram", hist}};
}

void stage_eval(const RunConfig& c, const fs::path& dir, StageResult& r) {
  const auto m = load_manifest((dir / kRefinedManifestFile).string());
  const auto ckpt = seq2seq::load_checkpoint((dir / kModelFile).string());
  const tokenize::TokenIndex index(ckpt.vocab);
  const auto train_report = nlohmann::json::parse(read_file(dir / kTrainReportFile));
  const auto dcfg = decode_config(c);
  const bool label = train_report.at("target").get<std::string>() == "label";

  nlohmann::json samples = nlohmann::json::array();
  std::vector<std::pair<std::string, std::string>> pairs;
  std::vector<std::string> generated, sources, targets;
  double r_sum = 0.0, p_sum = 0.0, f_sum = 0.0;
  for (const auto& id : train_report.at("test_ids")) {
    const auto* inst = m.find(id.get<std::string>());
    if (!inst) throw ValidationError("test instance missing from manifest: " + id.get<std::string>());
    const std::string target = label ? inst->label.value_or("") : inst->description;
    const auto gen = seq2seq::generate(inst->augmented_text, ckpt.params, ckpt.config, index, dcfg);
    const auto score = evalkit::rouge1(gen, target);
    r_sum += score.recall;
    p_sum += score.precision;
    f_sum += score.f1;
    samples.push_back({{"cve_id", inst->cve_id}, {"generated", gen},
                       {"rouge1", {{"recall", score.recall}, {"precision", score.precision}, {"f1", score.f1}}}});
    pairs.emplace_back(gen, target);
    generated.push_back(gen);
    targets.push_back(target);
  }
  for (const auto& inst : m.instances()) sources.push_back(inst.augmented_text);

  const double n = static_cast<double>(pairs.size());
  nlohmann::json rouge = nlohmann::json::object();
  if (!pairs.empty()) rouge = {{"recall", r_sum / n}, {"precision", p_sum / n}, {"f1", f_sum / n}};
  auto encoder = embed::make_encoder(embed::EncoderSpec::parse(c.refine.encoder));
  const auto sim = evalkit::similarity_report(pairs, *encoder);
  nlohmann::json similarity = {{"histogram", sim.histogram}};
  if (sim.mean) similarity["mean"] = *sim.mean;
  nlohmann::json trigrams = nlohmann::json::array();
  for (const auto& t : evalkit::trigram_counts(generated, static_cast<std::size_t>(c.eval.top_trigrams))) {
    trigrams.push_back({{"trigram", t.text}, {"count", t.count}});
  }
  const nlohmann::json report = {
      {"config_hash", c.hash},
      {"test_samples", pairs.size()},
      {"rouge1_mean", rouge},
      {"similarity", similarity},
      {"stats", {{"augmented", stats_json(evalkit::corpus_stats(sources))},
                 {"targets", stats_json(evalkit::corpus_stats(targets))},
                 {"generated", stats_json(evalkit::corpus_stats(generated))}}},
      {"entities", evalkit::entity_counts(sources, evalkit::bundled_gazetteer())},
      {"trigrams", trigrams},
      {"samples", samples}};
  write_json(dir / kEvalFile, report);
  record_output(r, dir, kEvalFile);
  r.summary = {{"test_samples", pairs.size()}};
}

using StageFn = void (*)(const RunConfig&, const fs::path&, StageResult&);

StageFn stage_fn(const std::string& name) {
  if (name == "ingest") return stage_ingest;
  if (name == "scrape") return stage_scrape;
  if (name == "build") return stage_build;
  if (name == "refine") return stage_refine;
  if (name == "tokenize") return stage_tokenize;
  if (name == "train") return stage_train;
  return stage_eval;
}

}  // namespace

const char* to_string(StageStatus s) {
  switch (s) {
    case StageStatus::kOk: return "ok";
    case StageStatus::kFailed: return "failed";
    case StageStatus::kSkipped: return "skipped";
    case StageStatus::kNotRun: return "not_run";
  }
  return "not_run";
}

bool RunReport::ok() const {
  for (const auto& s : stages) {
    if (s.status == StageStatus::kFailed || s.status == StageStatus::kSkipped) return false;
  }
  return true;
}

nlohmann::json to_json(const RunReport& report) {
  nlohmann::json stages = nlohmann::json::array();
  for (const auto& s : report.stages) {
    nlohmann::json j = {{"stage", s.name}, {"status", to_string(s.status)}, {"outputs", s.outputs},
                        {"summary", s.summary}};
    if (!s.error.empty()) j["error"] = s.error;
    stages.push_back(std::move(j));
  }
  return {{"config_hash", report.config_hash}, {"stages", stages}};
}

RunReport run_pipeline(const RunConfig& config, const RunOptions& options) {
  const auto& all = stage_names();
  std::vector<std::string> requested = options.only.value_or(all);
  for (const auto& s : requested) {
    if (std::find(all.begin(), all.end(), s) == all.end()) throw ValidationError("unknown stage: " + s);
  }
  fs::create_directories(config.output_dir);

  RunReport report;
  report.config_hash = config.hash;
  bool failed = false;
  for (const auto& name : all) {
    StageResult r;
    r.name = name;
    if (std::find(requested.begin(), requested.end(), name) == requested.end()) {
      report.stages.push_back(std::move(r));
      continue;
    }
    if (failed) {
      r.status = StageStatus::kSkipped;
      report.stages.push_back(std::move(r));
      continue;
    }
    if (options.log) *options.log << "[" << name << "] running\n";
    try {
      stage_fn(name)(config, config.output_dir, r);
      r.status = StageStatus::kOk;
    } catch (const std::exception& e) {
      r.status = StageStatus::kFailed;
      r.error = e.what();
      r.outputs.clear();
      failed = true;
    }
    if (options.log) {
      *options.log << "[" << name << "] " << to_string(r.status);
      if (!r.error.empty()) *options.log << ": " << r.error;
      *options.log << "\n";
    }
    report.stages.push_back(std::move(r));
  }
  write_json(config.output_dir / kRunReportFile, to_json(report));
  return report;
}

}  // namespace vulnforge::pipeline
