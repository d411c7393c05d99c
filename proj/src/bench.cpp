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

#include "samd/bench.hpp"

#include <algorithm>
#include <chrono>
#include <memory>
#include <random>

#include <fmt/format.h>

#include "samd/baselines.hpp"

namespace samd {
namespace {

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

// Motif pool shared by every synthetic text.
const std::vector<std::vector<TokenId>>& motif_pool() {
  static const auto pool = [] {
    std::mt19937_64 rng(0x5a3dULL);
    std::uniform_int_distribution<std::size_t> len(4, 16);
    std::uniform_int_distribution<TokenId> tok(0, 15);
    std::vector<std::vector<TokenId>> p(32);
    for (auto& m : p) {
      m.resize(len(rng));
      for (auto& t : m) t = tok(rng);
    }
    return p;
  }();
  return pool;
}

// Order-1 chain over [base, base + alphabet): every token has `fanout`
// successors chosen uniformly.
class MarkovText {
 public:
  MarkovText(TokenId base, std::size_t alphabet, std::size_t fanout, std::uint64_t seed)
      : rng_(seed), base_(base), succ_(alphabet) {
    std::uniform_int_distribution<std::size_t> pick(0, alphabet - 1);
    for (auto& row : succ_) {
      row.resize(fanout);
      for (auto& s : row) s = pick(rng_);
    }
  }

  std::vector<TokenId> generate(std::size_t n) {
    std::vector<TokenId> out;
    out.reserve(n);
    std::size_t cur = std::uniform_int_distribution<std::size_t>(0, succ_.size() - 1)(rng_);
    for (std::size_t i = 0; i < n; ++i) {
      out.push_back(base_ + static_cast<TokenId>(cur));
      const auto& row = succ_[cur];
      cur = row[std::uniform_int_distribution<std::size_t>(0, row.size() - 1)(rng_)];
    }
    return out;
  }

 private:
  std::mt19937_64 rng_;
  TokenId base_;
  std::vector<std::vector<std::size_t>> succ_;
};

std::vector<TokenId> random_tokens(std::mt19937_64& rng, std::size_t n, TokenId lo,
                                   TokenId hi) {
  std::uniform_int_distribution<TokenId> d(lo, hi - 1);
  std::vector<TokenId> out(n);
  for (auto& t : out) t = d(rng);
  return out;
}

void append(std::vector<TokenId>& dst, std::span<const TokenId> src) {
  dst.insert(dst.end(), src.begin(), src.end());
}

constexpr TokenId kCorpusSep = 1u << 20;

}  // namespace

std::vector<TokenId> synthetic_text(std::size_t length, std::uint64_t seed,
                                    double mutation_rate) {
  const auto& pool = motif_pool();
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  std::uniform_int_distribution<TokenId> fresh(1000, 1000 + 1000000);
  std::vector<TokenId> out;
  out.reserve(length);
  while (out.size() < length) {
    for (TokenId t : pool[pick(rng)]) {
      if (out.size() == length) break;
      out.push_back(coin(rng) < mutation_rate ? fresh(rng) : t);
    }
  }
  return out;
}

std::vector<TransferBenchRow> run_transfer_bench(const TransferBenchOptions& options) {
  std::vector<TransferBenchRow> rows;
  for (std::size_t idx = 0; idx < options.reference_sizes.size(); ++idx) {
    const std::size_t ref_len = options.reference_sizes[idx];
    const std::size_t stream_len =
        options.stream_sizes.empty() ? ref_len
                                     : options.stream_sizes[std::min(idx, options.stream_sizes.size() - 1)];
    if (stream_len == 0) continue;
    const auto reference = synthetic_text(ref_len, options.seed * 1000003 + 2 * idx);
    const auto stream = synthetic_text(stream_len, options.seed * 1000003 + 2 * idx + 1);

    const std::size_t queries = std::min(options.baseline_queries, stream_len);
    std::vector<std::size_t> positions;  // prefix lengths to query
    for (std::size_t q = 1; q <= queries; ++q) positions.push_back(q * stream_len / queries);

    for (const auto& matcher : options.matchers) {
      TransferBenchRow row;
      row.matcher = matcher;
      row.reference_len = ref_len;
      row.stream_len = stream_len;
      const auto start = Clock::now();
      if (matcher == kMatcherSam) {
        const auto sam = build(reference);
        TransferCounters counters;
        MatchCursor cur;
        for (TokenId t : stream) cur = sam.transfer(cur, t, &counters);
        row.queries = stream_len;
        row.work = counters.steps();
        row.bound_ok = row.work <= 2 * static_cast<std::uint64_t>(stream_len);
      } else if (matcher == kMatcherNgramBrute) {
        // Text is the reference followed by the query's last max_n tokens.
        std::vector<TokenId> text(reference);
        CompareCounter counter;
        for (std::size_t p : positions) {
          text.resize(ref_len);
          const std::size_t from = p > options.max_n ? p - options.max_n : 0;
          text.insert(text.end(), stream.begin() + static_cast<std::ptrdiff_t>(from),
                      stream.begin() + static_cast<std::ptrdiff_t>(p));
          ngram_match_brute(text, options.max_n, 1, &counter);
        }
        row.queries = positions.size();
        row.work = counter.comparisons;
      } else if (matcher == kMatcherSuffixArray) {
        const SuffixArrayIndex index(reference);
        CompareCounter counter;
        for (std::size_t p : positions) {
          index.match(std::span<const TokenId>(stream).first(p), options.max_n, &counter);
        }
        row.queries = positions.size();
        row.work = counter.comparisons;
      } else {
        throw SamError("unknown matcher '" + matcher + "'");
      }
      row.wall_ms = elapsed_ms(start);
      row.work_per_token = row.queries ? static_cast<double>(row.work) / row.queries : 0.0;
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

std::vector<DecodeTaskReport> run_decode_suite(const std::vector<std::string>& tasks,
                                               const DecodeConfig& config,
                                               std::uint64_t seed) {
  std::mt19937_64 rng(seed);

  // Shared offline corpus over ids [0, 300).
  MarkovText corpus_gen(0, 300, 3, seed ^ 0x9e3779b97f4a7c15ULL);
  std::vector<std::vector<TokenId>> docs;
  std::vector<TokenId> flat;
  for (int d = 0; d < 20; ++d) {
    docs.push_back(corpus_gen.generate(200));
    append(flat, docs.back());
    flat.push_back(kCorpusSep);
  }
  auto static_sam = build_corpus(docs, kCorpusSep);
  static_sam.init_topk(kDefaultTopK);

  std::vector<DecodeTaskReport> reports;
  for (const auto& task : tasks) {
    std::vector<TokenId> prompt;
    std::unique_ptr<Oracle> oracle;
    DecodeConfig cfg = config;
    if (task == "copy") {
      const auto passage = random_tokens(rng, 400, 0, 5000);
      prompt = random_tokens(rng, 16, 5000, 6000);
      append(prompt, passage);
      append(prompt, random_tokens(rng, 8, 5000, 6000));
      oracle = std::make_unique<ReplayOracle>(passage, prompt.size());
      cfg.max_new_tokens = passage.size();
    } else if (task == "lookup") {
      const auto& doc = docs[std::uniform_int_distribution<std::size_t>(0, docs.size() - 1)(rng)];
      prompt.assign(doc.begin(), doc.begin() + 24);
      oracle = std::make_unique<NgramOracle>(3, flat, kCorpusSep);
    } else if (task == "mixed") {
      const auto passage = random_tokens(rng, 300, 0, 5000);
      MarkovText novel(20000, 30, 6, rng());
      std::vector<TokenId> target;
      std::uniform_int_distribution<std::size_t> offset(0, passage.size() - 40);
      while (target.size() < 400) {
        const std::size_t o = offset(rng);
        append(target, std::span<const TokenId>(passage).subspan(o, 40));
        append(target, novel.generate(20));
      }
      prompt = random_tokens(rng, 16, 5000, 6000);
      append(prompt, passage);
      oracle = std::make_unique<ReplayOracle>(target, prompt.size());
      cfg.max_new_tokens = target.size();
    } else if (task == "novel") {
      MarkovText novel(20000, 30, 6, rng());
      auto target = novel.generate(800);
      prompt = random_tokens(rng, 32, 5000, 6000);
      oracle = std::make_unique<ReplayOracle>(std::move(target), prompt.size());
      cfg.max_new_tokens = 800;
    } else {
      throw SamError("unknown decode task '" + task + "'");
    }
    const auto result = decode(prompt, *oracle, cfg, &static_sam);
    DecodeTaskReport rep;
    rep.task = task;
    rep.metrics = result.metrics;
    rep.lossless = result.output == decode_plain(prompt, *oracle, cfg.max_new_tokens);
    reports.push_back(std::move(rep));
  }
  return reports;
}

nlohmann::json to_json(const std::vector<TransferBenchRow>& rows) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& r : rows) {
    out.push_back({{"matcher", r.matcher},
                   {"reference_len", r.reference_len},
                   {"stream_len", r.stream_len},
                   {"queries", r.queries},
                   {"work", r.work},
                   {"work_per_token", r.work_per_token},
                   {"wall_ms", r.wall_ms},
                   {"bound_ok", r.bound_ok}});
  }
  return out;
}

nlohmann::json to_json(const std::vector<DecodeTaskReport>& reports) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& r : reports) {
    auto j = r.metrics.to_json();
    j["task"] = r.task;
    j["lossless"] = r.lossless;
    out.push_back(std::move(j));
  }
  return out;
}

std::string format_table(const std::vector<TransferBenchRow>& rows) {
  std::string s = fmt::format("{:<13} {:>9} {:>9} {:>8} {:>14} {:>12} {:>10} {:>6}\n",
                              "matcher", "ref_len", "stream", "queries", "work",
                              "work/token", "wall_ms", "2L");
  for (const auto& r : rows) {
    s += fmt::format("{:<13} {:>9} {:>9} {:>8} {:>14} {:>12.3f} {:>10.2f} {:>6}\n",
                     r.matcher, r.reference_len, r.stream_len, r.queries, r.work,
                     r.work_per_token, r.wall_ms,
                     r.matcher == kMatcherSam ? (r.bound_ok ? "pass" : "FAIL") : "-");
  }
  return s;
}

std::string format_table(const std::vector<DecodeTaskReport>& reports) {
  std::string s = fmt::format("{:<8} {:>6} {:>7} {:>6} | {:>13} {:>13} {:>13} {:>13} | {:>8}\n",
                              "task", "steps", "tokens", "MAT", "dynamic", "static",
                              "auxiliary", "plain", "lossless");
  for (const auto& r : reports) {
    const auto& m = r.metrics;
    s += fmt::format("{:<8} {:>6} {:>7} {:>6.2f} |", r.task, m.steps, m.tokens, m.mat());
    for (std::size_t b = 0; b < m.per_source.size(); ++b) {
      s += fmt::format(" {:>5.1f}% {:>5.2f}", 100.0 * m.share(b), m.per_source[b].mat());
    }
    s += fmt::format(" | {:>8}\n", r.lossless ? "yes" : "NO");
  }
  return s;
}

}  // namespace samd
