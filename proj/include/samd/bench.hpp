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

#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "samd/decode.hpp"

namespace samd {

inline constexpr const char* kMatcherSam = "sam";
inline constexpr const char* kMatcherNgramBrute = "ngram_brute";
inline constexpr const char* kMatcherSuffixArray = "suffix_array";

struct TransferBenchOptions {
  std::vector<std::size_t> reference_sizes{1000, 10000, 100000};
  // Stream length per reference size; empty means "same as the reference".
  // Zero-length streams produce no rows.
  std::vector<std::size_t> stream_sizes;
  std::vector<std::string> matchers{kMatcherSam, kMatcherNgramBrute, kMatcherSuffixArray};
  // Baseline matchers are sampled at this many stream positions.
  std::size_t baseline_queries = 128;
  std::size_t max_n = 4;
  std::uint64_t seed = 0;
};

struct TransferBenchRow {
  std::string matcher;
  std::size_t reference_len = 0;
  std::size_t stream_len = 0;
  std::size_t queries = 0;   // positions measured
  std::uint64_t work = 0;    // basic steps (sam) or token comparisons
  double work_per_token = 0.0;
  double wall_ms = 0.0;      // not deterministic
  bool bound_ok = true;      // sam: work <= 2 * stream_len
};

// Repetitive synthetic text: random motifs from a small pool, with a fraction
// of tokens replaced by fresh ids outside the motif alphabet.
std::vector<TokenId> synthetic_text(std::size_t length, std::uint64_t seed,
                                    double mutation_rate = 0.1);

std::vector<TransferBenchRow> run_transfer_bench(const TransferBenchOptions& options);

struct DecodeTaskReport {
  std::string task;
  DecodeMetrics metrics;
  bool lossless = true;  // output equals plain decoding
};

inline const std::vector<std::string> kDecodeTasks = {"copy", "lookup", "mixed", "novel"};

// Runs the named tasks under config. Tasks: copy (prompt holds a passage the
// oracle repeats), lookup (n-gram oracle over a corpus also indexed by a
// static automaton), mixed (copied spans interleaved with novel text), novel
// (oracle text disjoint from prompt and corpus).
std::vector<DecodeTaskReport> run_decode_suite(const std::vector<std::string>& tasks,
                                               const DecodeConfig& config,
                                               std::uint64_t seed);

nlohmann::json to_json(const std::vector<TransferBenchRow>& rows);
nlohmann::json to_json(const std::vector<DecodeTaskReport>& reports);
std::string format_table(const std::vector<TransferBenchRow>& rows);
std::string format_table(const std::vector<DecodeTaskReport>& reports);

}  // namespace samd
