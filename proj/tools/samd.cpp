// Copyright 2026 The samd Authors.
// SPDX-License-Identifier: Apache-2.0
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// samd: build, inspect and decode with suffix-automaton drafting.

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <json.hpp>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include "samd/bench.hpp"
#include "samd/corpus.hpp"
#include "samd/decode.hpp"
#include "samd/sam.hpp"

namespace fs = std::filesystem;

namespace {

void setup_logging() {
  auto logger = spdlog::stderr_color_mt("samd");
  spdlog::set_default_logger(logger);
  spdlog::set_level(spdlog::level::warn);
  if (const char* env = std::getenv("SAMSPEC_LOG")) {
    spdlog::set_level(spdlog::level::from_str(env));
  }
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw samd::SamError("cannot open " + path + " for writing");
  out << text;
}

samd::Vocabulary make_vocab(samd::VocabMode mode, std::optional<samd::TokenId> sep,
                            const std::string& vocab_file) {
  switch (mode) {
    case samd::VocabMode::kByte:
      return samd::Vocabulary::bytes(sep.value_or(samd::kDefaultByteSeparator));
    case samd::VocabMode::kWord:
      if (!sep) throw samd::SamError("--sep-id is required in word mode");
      if (!vocab_file.empty()) return samd::Vocabulary::load_words(vocab_file, *sep);
      return samd::Vocabulary::words(*sep);
    case samd::VocabMode::kIds:
      if (!sep) throw samd::SamError("--sep-id is required in ids mode");
      return samd::Vocabulary::ids(*sep);
  }
  throw samd::SamError("unreachable vocabulary mode");
}

std::vector<std::size_t> parse_size_list(const std::string& s) {
  std::vector<std::size_t> out;
  std::size_t start = 0;
  while (start <= s.size()) {
    const auto comma = std::min(s.find(',', start), s.size());
    const auto field = s.substr(start, comma - start);
    if (!field.empty()) out.push_back(std::stoull(field));
    start = comma + 1;
  }
  return out;
}

std::vector<std::string> split(const std::string& s, char delim) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(delim, start);
    out.push_back(s.substr(start, pos - start));
    if (pos == std::string::npos) break;
    start = pos + 1;
  }
  return out;
}

struct BuildArgs {
  std::vector<std::string> inputs;
  std::string mode = "byte";
  std::optional<samd::TokenId> sep;
  std::size_t topk = samd::kDefaultTopK;
  std::string out;
  bool per_line = false;
};

int run_build(const BuildArgs& a) {
  auto vocab = make_vocab(samd::parse_vocab_mode(a.mode), a.sep, "");
  std::vector<fs::path> paths(a.inputs.begin(), a.inputs.end());
  samd::IngestOptions opts;
  opts.doc_per_line = a.per_line;
  opts.topk = a.topk;
  auto result = samd::ingest(paths, vocab, opts);
  samd::save_file(result.sam, a.out);
  auto manifest = result.manifest.to_json();
  if (vocab.mode() == samd::VocabMode::kWord) {
    const std::string words = a.out + ".vocab";
    vocab.save_words(words);
    manifest["vocab_file"] = words;
  }
  write_text(a.out + ".json", manifest.dump(2) + "\n");
  std::cout << manifest.dump(2) << "\n";
  return 0;
}

int run_stats(const std::string& path) {
  const auto sam = samd::load_file(path);
  const auto L = sam.max_length();
  std::cout << fmt::format("nodes        {}\n", sam.size());
  std::cout << fmt::format("edges        {}\n", sam.transition_count());
  std::cout << fmt::format("clones       {}\n", sam.clone_count());
  std::cout << fmt::format("max_length   {}\n", L);
  std::cout << fmt::format("vocab_size   {}\n", sam.vocab_size());
  std::cout << fmt::format("topk         {}\n", sam.topk_k());
  if (sam.separator()) std::cout << fmt::format("separator    {}\n", *sam.separator());
  if (L >= 2) {
    std::cout << fmt::format("node_bound   {} <= {} {}\n", sam.size(), 2 * L - 1,
                             sam.size() <= 2ull * L - 1 ? "ok" : "VIOLATED");
  }
  std::vector<samd::NodeId> ids(sam.size());
  for (samd::NodeId i = 0; i < ids.size(); ++i) ids[i] = i;
  const std::size_t top = std::min<std::size_t>(5, ids.size());
  std::partial_sort(ids.begin(), ids.begin() + static_cast<std::ptrdiff_t>(top), ids.end(),
                    [&](samd::NodeId a, samd::NodeId b) {
                      const auto da = sam.node(a).next.size();
                      const auto db = sam.node(b).next.size();
                      return da != db ? da > db : a < b;
                    });
  std::cout << "top_degree\n";
  for (std::size_t i = 0; i < top; ++i) {
    const auto& n = sam.node(ids[i]);
    std::cout << fmt::format("  state {:>8}  degree {:>6}  length {:>8}  freq {}\n", ids[i],
                             n.next.size(), n.length, n.freq);
  }
  return 0;
}

struct DecodeArgs {
  std::string prompt_file;
  std::string mode = "ids";
  std::optional<samd::TokenId> sep;
  std::string vocab_file;
  std::string oracle;
  std::string sam = "none";
  std::string aux = "recycle";
  std::string dynamic = "on";
  std::optional<std::size_t> draft_len;
  bool code = false;
  std::optional<std::int64_t> l_bias;
  std::int64_t l_threshold = samd::kDefaultLThreshold;
  std::size_t max_new = 256;
  std::string metrics_out;
  std::string out;
};

int run_decode(const DecodeArgs& a) {
  const auto mode = samd::parse_vocab_mode(a.mode);
  std::unique_ptr<samd::SuffixAutomaton> static_sam;
  if (a.sam != "none") {
    static_sam = std::make_unique<samd::SuffixAutomaton>(samd::load_file(a.sam));
  }
  auto sep = a.sep;
  if (!sep && static_sam && static_sam->separator()) sep = static_sam->separator();
  if (!sep && mode != samd::VocabMode::kByte) sep = samd::kNoToken - 1;
  auto vocab = make_vocab(mode, sep, a.vocab_file);

  const auto prompt = vocab.tokenize(samd::read_file(a.prompt_file));

  const auto parts = split(a.oracle, ':');
  std::unique_ptr<samd::Oracle> oracle;
  if (parts.size() == 2 && parts[0] == "replay") {
    auto target = vocab.tokenize(samd::read_file(parts[1]));
    oracle = std::make_unique<samd::ReplayOracle>(std::move(target), prompt.size());
  } else if (parts.size() == 3 && parts[0] == "ngram") {
    std::size_t order = 0;
    try {
      order = std::stoull(parts[1]);
    } catch (const std::exception&) {
      throw samd::SamError("invalid oracle order '" + parts[1] + "'");
    }
    auto docs = samd::read_documents({fs::path(parts[2])}, vocab,
                                     mode != samd::VocabMode::kIds);
    std::vector<samd::TokenId> corpus;
    for (const auto& d : docs) {
      corpus.insert(corpus.end(), d.begin(), d.end());
      corpus.push_back(vocab.separator());
    }
    oracle = std::make_unique<samd::NgramOracle>(order, corpus, vocab.separator());
  } else {
    throw samd::SamError("invalid oracle spec '" + a.oracle +
                         "' (expected replay:<file> or ngram:<order>:<corpus>)");
  }

  if (static_sam && static_sam->vocab_size() != 0) {
    const auto limit = static_sam->vocab_size();
    const bool byte_mismatch = mode == samd::VocabMode::kByte && limit != vocab.size();
    const bool out_of_range = std::any_of(prompt.begin(), prompt.end(),
                                          [&](samd::TokenId t) { return t >= limit; });
    if (byte_mismatch || out_of_range) {
      throw samd::SamError(fmt::format(
          "vocabulary mismatch: automaton vocab size {} vs prompt mode '{}'", limit, a.mode));
    }
  }

  if (a.aux != "recycle" && a.aux != "none") throw samd::SamError("--aux must be recycle or none");
  if (a.dynamic != "on" && a.dynamic != "off") throw samd::SamError("--dynamic must be on or off");
  auto cfg = samd::DecodeConfig::defaults(a.aux == "recycle", a.code);
  if (a.draft_len) cfg.draft_len = *a.draft_len;
  if (a.l_bias) cfg.l_bias = *a.l_bias;
  cfg.l_threshold = a.l_threshold;
  cfg.max_new_tokens = a.max_new;
  cfg.use_dynamic = a.dynamic == "on";

  const auto result = samd::decode(prompt, *oracle, cfg, static_sam.get());
  const auto text = vocab.detokenize(result.output);
  if (a.out.empty()) {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << "\n";
  } else {
    write_text(a.out, text);
  }
  if (!a.metrics_out.empty()) write_text(a.metrics_out, result.metrics.to_json().dump(2) + "\n");
  spdlog::info("decode: {} tokens in {} steps, MAT {:.3f}", result.metrics.tokens,
               result.metrics.steps, result.metrics.mat());
  return 0;
}

struct BenchArgs {
  std::string suite;
  std::string sizes = "1000,10000,100000";
  std::string streams;
  std::string tasks = "copy,lookup,mixed,novel";
  std::size_t queries = 128;
  std::size_t draft_len = samd::kDefaultDraftLen;
  std::string json_out;
};

int run_bench(const BenchArgs& a, std::uint64_t seed) {
  nlohmann::json json;
  std::string table;
  bool ok = true;
  if (a.suite == "transfer") {
    samd::TransferBenchOptions opts;
    opts.reference_sizes = parse_size_list(a.sizes);
    opts.stream_sizes = parse_size_list(a.streams);
    opts.baseline_queries = a.queries;
    opts.seed = seed;
    const auto rows = samd::run_transfer_bench(opts);
    for (const auto& r : rows) ok = ok && r.bound_ok;
    json = samd::to_json(rows);
    table = samd::format_table(rows);
  } else if (a.suite == "decode") {
    auto cfg = samd::DecodeConfig::defaults(true);
    cfg.draft_len = a.draft_len;
    const auto reports = samd::run_decode_suite(split(a.tasks, ','), cfg, seed);
    for (const auto& r : reports) ok = ok && r.lossless;
    json = samd::to_json(reports);
    table = samd::format_table(reports);
  } else {
    throw samd::SamError("unknown bench suite '" + a.suite + "' (transfer or decode)");
  }
  std::cout << table;
  if (!a.json_out.empty()) write_text(a.json_out, json.dump(2) + "\n");
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  setup_logging();
  CLI::App app{"Suffix-automaton speculative drafting engine"};
  app.require_subcommand(1);
  std::uint64_t seed = 0;
  app.add_option("--seed", seed, "Seed for all randomness")->capture_default_str();

  BuildArgs build;
  auto* cmd_build = app.add_subcommand("build", "Build a static automaton from a corpus");
  cmd_build->add_option("--input", build.inputs, "Input files")->required()->check(CLI::ExistingFile);
  cmd_build->add_option("--mode", build.mode, "byte | word | ids")->capture_default_str();
  cmd_build->add_option("--sep-id", build.sep, "Document separator token id");
  cmd_build->add_option("--topk", build.topk, "Top-k successors per state")->capture_default_str();
  cmd_build->add_option("--out", build.out, "Output .samd file")->required();
  cmd_build->add_flag("--doc-per-line", build.per_line, "Treat each line as a document");

  DecodeArgs dec;
  auto* cmd_decode = app.add_subcommand("decode", "Speculative decoding against an oracle");
  cmd_decode->add_option("--prompt-file", dec.prompt_file, "Prompt file")->required()->check(CLI::ExistingFile);
  cmd_decode->add_option("--oracle", dec.oracle, "replay:<file> | ngram:<order>:<corpus>")->required();
  cmd_decode->add_option("--mode", dec.mode, "byte | word | ids")->capture_default_str();
  cmd_decode->add_option("--sep-id", dec.sep, "Separator token id");
  cmd_decode->add_option("--vocab", dec.vocab_file, "Word list written by build (word mode)");
  cmd_decode->add_option("--sam", dec.sam, "Static automaton file or none")->capture_default_str();
  cmd_decode->add_option("--aux", dec.aux, "recycle | none")->capture_default_str();
  cmd_decode->add_option("--dynamic", dec.dynamic, "on | off")->capture_default_str();
  cmd_decode->add_option("--draft-len", dec.draft_len, "Draft size (default 40, 16 with --code)");
  cmd_decode->add_flag("--code", dec.code, "Code profile: 16-token drafts");
  cmd_decode->add_option("--l-bias", dec.l_bias, "Static-over-dynamic margin (default 5, 0 with --aux none)");
  cmd_decode->add_option("--l-threshold", dec.l_threshold, "Virtual match length of the auxiliary drafter")->capture_default_str();
  cmd_decode->add_option("--max-new", dec.max_new, "Maximum new tokens")->capture_default_str();
  cmd_decode->add_option("--metrics-out", dec.metrics_out, "Metrics JSON output");
  cmd_decode->add_option("--out", dec.out, "Output file (default stdout)");

  BenchArgs bench;
  auto* cmd_bench = app.add_subcommand("bench", "Run instrumented benchmarks");
  cmd_bench->add_option("--suite", bench.suite, "transfer | decode")->required();
  cmd_bench->add_option("--sizes", bench.sizes, "Reference sizes (comma separated)")->capture_default_str();
  cmd_bench->add_option("--streams", bench.streams, "Stream sizes (comma separated, default = sizes)");
  cmd_bench->add_option("--queries", bench.queries, "Sampled baseline queries per size")->capture_default_str();
  cmd_bench->add_option("--tasks", bench.tasks, "Decode tasks (comma separated)")->capture_default_str();
  cmd_bench->add_option("--draft-len", bench.draft_len, "Draft size")->capture_default_str();
  cmd_bench->add_option("--json-out", bench.json_out, "JSON report output");

  std::string stats_path;
  auto* cmd_stats = app.add_subcommand("stats", "Print automaton statistics");
  cmd_stats->add_option("--sam", stats_path, "Automaton file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() != 0) std::cerr << app.help();
    return app.exit(e);
  }

  try {
    if (*cmd_build) return run_build(build);
    if (*cmd_decode) return run_decode(dec);
    if (*cmd_bench) return run_bench(bench, seed);
    if (*cmd_stats) return run_stats(stats_path);
  } catch (const std::exception& e) {
    spdlog::error("{}", e.what());
    return 1;
  }
  return 1;
}
