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

#include <doctest.h>

#include <map>

#include "samd/bench.hpp"

using namespace samd;

namespace {

const DecodeTaskReport& find(const std::vector<DecodeTaskReport>& reps, const std::string& task) {
  for (const auto& r : reps) {
    if (r.task == task) return r;
  }
  FAIL("missing task " << task);
  return reps.front();
}

constexpr auto kDyn = static_cast<std::size_t>(DraftSource::kDynamicSam);
constexpr auto kAux = static_cast<std::size_t>(DraftSource::kAuxiliary);

}  // namespace

TEST_CASE("transfer bench") {
  TransferBenchOptions opt;
  const auto rows = run_transfer_bench(opt);
  REQUIRE(rows.size() == 9);
  std::map<std::string, std::vector<double>> per_token;
  for (const auto& r : rows) {
    per_token[r.matcher].push_back(r.work_per_token);
    if (r.matcher == kMatcherSam) {
      CHECK(r.bound_ok);
      CHECK(r.work <= 2 * r.stream_len);
      CHECK(r.work_per_token <= 2.0);
    }
  }
  const auto& brute = per_token[kMatcherNgramBrute];
  REQUIRE(brute.size() == 3);
  CHECK(brute[1] > brute[0]);
  CHECK(brute[2] > brute[1]);
  CHECK(brute[2] >= 5.0 * brute[0]);

  const auto table = format_table(rows);
  CHECK(table.find("pass") != std::string::npos);
  CHECK(to_json(rows).size() == 9);
}

TEST_CASE("transfer bench edge cases") {
  TransferBenchOptions opt;
  opt.reference_sizes = {100};
  opt.stream_sizes = {0};
  CHECK(run_transfer_bench(opt).empty());
  opt.stream_sizes = {50};
  opt.matchers = {"nope"};
  CHECK_THROWS_AS(run_transfer_bench(opt), SamError);
}

TEST_CASE("synthetic text is deterministic") {
  CHECK(synthetic_text(500, 3) == synthetic_text(500, 3));
  CHECK(synthetic_text(500, 3) != synthetic_text(500, 4));
  CHECK(synthetic_text(123, 1).size() == 123);
}

TEST_CASE("decode suite") {
  const std::vector<std::string> tasks(kDecodeTasks.begin(), kDecodeTasks.end());
  const auto reps = run_decode_suite(tasks, DecodeConfig::defaults(true), 0);
  REQUIRE(reps.size() == tasks.size());
  for (const auto& r : reps) {
    CHECK(r.lossless);
    CHECK(r.metrics.mat() >= 1.0);
  }
  const auto& copy = find(reps, "copy").metrics;
  CHECK(copy.share(kDyn) > 0.5);
  CHECK(copy.per_source[kDyn].mat() > copy.per_source[kAux].mat());
  const auto& novel = find(reps, "novel").metrics;
  CHECK(novel.share(kAux) > 0.8);

  SUBCASE("deterministic given a seed") {
    const auto again = run_decode_suite(tasks, DecodeConfig::defaults(true), 0);
    CHECK(to_json(again) == to_json(reps));
  }
  SUBCASE("all sources off") {
    auto cfg = DecodeConfig::defaults(false);
    cfg.use_dynamic = cfg.use_static = false;
    for (const auto& r : run_decode_suite(tasks, cfg, 0)) {
      CHECK(r.metrics.mat() == 1.0);
      CHECK(r.lossless);
    }
  }
  SUBCASE("unknown task") {
    CHECK_THROWS_AS(run_decode_suite({"nope"}, DecodeConfig{}, 0), SamError);
  }
  CHECK(format_table(reps).find("copy") != std::string::npos);
}
