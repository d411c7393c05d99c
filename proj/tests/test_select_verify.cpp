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

#include <numeric>
#include <random>

#include "oracles.hpp"
#include "samd/decode.hpp"

using namespace samd;
using oracle::from_string;
using oracle::Tokens;

namespace {

SelectionInput sel(std::uint32_t l_static, std::uint32_t l_dynamic, std::int64_t l_bias = 5,
                   std::int64_t l_threshold = 5) {
  SelectionInput in;
  in.l_static = l_static;
  in.l_dynamic = l_dynamic;
  in.has_static = in.has_dynamic = in.has_aux = true;
  in.l_bias = l_bias;
  in.l_threshold = l_threshold;
  return in;
}

DecodeConfig dynamic_only(std::size_t draft_len = kDefaultDraftLen) {
  DecodeConfig c = DecodeConfig::defaults(false);
  c.use_static = false;
  c.draft_len = draft_len;
  return c;
}

DecodeConfig nothing() {
  DecodeConfig c = DecodeConfig::defaults(false);
  c.use_dynamic = c.use_static = false;
  return c;
}

struct CopyTask {
  Tokens prompt;
  Tokens passage;
};

CopyTask copy_task(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  CopyTask t;
  t.passage = oracle::random_tokens(rng, 400, 5000);
  t.prompt = oracle::random_tokens(rng, 16, 1000, 10000);
  t.prompt.insert(t.prompt.end(), t.passage.begin(), t.passage.end());
  const auto tail = oracle::random_tokens(rng, 8, 1000, 10000);
  t.prompt.insert(t.prompt.end(), tail.begin(), tail.end());
  return t;
}

}  // namespace

TEST_CASE("selection rule") {
  CHECK(select_draft(sel(10, 4)) == DraftSource::kStaticSam);
  CHECK(select_draft(sel(0, 8)) == DraftSource::kDynamicSam);
  CHECK(select_draft(sel(2, 1)) == DraftSource::kAuxiliary);
  SUBCASE("ties go dynamic, static, auxiliary") {
    CHECK(select_draft(sel(10, 5)) == DraftSource::kDynamicSam);
    CHECK(select_draft(sel(0, 5)) == DraftSource::kDynamicSam);
    CHECK(select_draft(sel(8, 3, 3, 5)) == DraftSource::kStaticSam);
  }
  SUBCASE("missing sources are skipped") {
    auto in = sel(20, 1);
    in.has_static = false;
    CHECK(select_draft(in) == DraftSource::kAuxiliary);
    in.has_aux = false;
    CHECK(select_draft(in) == DraftSource::kDynamicSam);
    in.has_dynamic = false;
    CHECK_FALSE(select_draft(in));
  }
  SUBCASE("without auxiliary the static match only needs to beat dynamic") {
    auto in = sel(5, 4, 0);
    in.has_aux = false;
    CHECK(select_draft(in) == DraftSource::kStaticSam);
  }
}

TEST_CASE("linear verification") {
  const Tokens prompt = from_string("xy");
  const ReplayOracle oracle(from_string("ABCDEFG"), prompt.size());
  SUBCASE("full acceptance plus bonus") {
    Tokens ctx = prompt;
    const auto v = verify_linear(oracle, ctx, from_string("ABCDE"), 100);
    CHECK(v.accepted == 5);
    CHECK(v.emitted == 6);
    CHECK_FALSE(v.done);
    CHECK(ctx == from_string("xyABCDEF"));
  }
  SUBCASE("first token wrong") {
    Tokens ctx = prompt;
    const auto v = verify_linear(oracle, ctx, from_string("ZBC"), 100);
    CHECK(v.accepted == 0);
    CHECK(v.emitted == 1);
    CHECK(ctx == from_string("xyA"));
  }
  SUBCASE("oracle ends mid-draft") {
    const ReplayOracle short_oracle(from_string("ABC"), prompt.size());
    Tokens ctx = prompt;
    const auto v = verify_linear(short_oracle, ctx, from_string("ABCDE"), 100);
    CHECK(v.accepted == 3);
    CHECK(v.emitted == 3);
    CHECK(v.done);
    CHECK(ctx == from_string("xyABC"));
  }
  SUBCASE("emission budget") {
    Tokens ctx = prompt;
    const auto v = verify_linear(oracle, ctx, from_string("ABCDE"), 2);
    CHECK(v.accepted == 2);
    CHECK(v.emitted == 2);
    CHECK_FALSE(v.done);
  }
}

TEST_CASE("tree verification follows the oracle, not the probabilities") {
  const Tokens prompt = from_string("x");
  Draft d;
  d.tokens = from_string("BCDE");
  d.parents = {-1, -1, 1, 0};
  d.path_probs = {0.67, 0.33, 0.2, 0.1};
  SUBCASE("C branch") {
    const ReplayOracle oracle(from_string("CDQ"), prompt.size());
    Tokens ctx = prompt;
    const auto v = verify_tree(oracle, ctx, d, 100);
    CHECK(v.accepted == 2);
    CHECK(v.emitted == 3);
    CHECK(ctx == from_string("xCDQ"));
  }
  SUBCASE("no child matches") {
    const ReplayOracle oracle(from_string("ZZ"), prompt.size());
    Tokens ctx = prompt;
    const auto v = verify_tree(oracle, ctx, d, 100);
    CHECK(v.accepted == 0);
    CHECK(v.emitted == 1);
  }
  SUBCASE("chain equal to the continuation") {
    Draft chain;
    chain.tokens = from_string("CDE");
    chain.parents = {-1, 0, 1};
    const ReplayOracle oracle(from_string("CDE"), prompt.size());
    Tokens ctx = prompt;
    const auto v = verify_tree(oracle, ctx, chain, 100);
    CHECK(v.accepted == 3);
    CHECK(v.emitted == 3);
    CHECK(v.done);
  }
}

TEST_CASE("copy task with the dynamic automaton") {
  const auto task = copy_task(1);
  const ReplayOracle oracle(task.passage, task.prompt.size());
  auto cfg = dynamic_only();
  cfg.max_new_tokens = task.passage.size();
  const auto r = decode(task.prompt, oracle, cfg);
  CHECK(r.output == task.passage);
  CHECK(r.metrics.tokens == task.passage.size());
  CHECK(r.metrics.mat() >= 20.0);
  CHECK(r.metrics.share(static_cast<std::size_t>(DraftSource::kDynamicSam)) > 0.5);

  const auto plain = decode(task.prompt, oracle, [] {
    auto c = nothing();
    c.max_new_tokens = 400;
    return c;
  }());
  CHECK(plain.output == task.passage);
  CHECK(plain.metrics.mat() == 1.0);
  CHECK(plain.metrics.share(DecodeMetrics::kPlain) == 1.0);
}

TEST_CASE("fresh tokens fall back to plain decoding") {
  const Tokens prompt = from_string("hello");
  Tokens target(100);
  std::iota(target.begin(), target.end(), 1000);
  const ReplayOracle oracle(target, prompt.size());
  auto cfg = DecodeConfig::defaults(true);
  cfg.max_new_tokens = 1000;
  const auto r = decode(prompt, oracle, cfg);
  CHECK(r.output == target);
  CHECK(r.metrics.mat() == 1.0);
}

TEST_CASE("metrics bookkeeping") {
  const auto task = copy_task(2);
  const ReplayOracle oracle(task.passage, task.prompt.size());
  auto cfg = DecodeConfig::defaults(true);
  cfg.max_new_tokens = 300;
  const auto r = decode(task.prompt, oracle, cfg);
  CHECK(r.output.size() == 300);
  std::uint64_t steps = 0, tokens = 0;
  for (const auto& s : r.metrics.per_source) {
    steps += s.steps;
    tokens += s.tokens;
    CHECK(s.accepted <= s.drafted);
    if (s.steps) CHECK(s.mat() >= 1.0);
  }
  CHECK(steps == r.metrics.steps);
  CHECK(tokens == r.metrics.tokens);
  CHECK(r.metrics.mat() >= 1.0);
  const auto j = r.metrics.to_json();
  CHECK(j["tokens"] == 300);
  CHECK(j["sources"].contains("dynamic_sam"));
}

TEST_CASE("property: decoding is lossless") {
  std::mt19937_64 rng(77);
  for (int iter = 0; iter < 60; ++iter) {
    const TokenId alphabet = static_cast<TokenId>(3 + rng() % 10);
    const auto corpus = oracle::random_tokens(rng, 50 + rng() % 400, alphabet);
    const NgramOracle model(1 + rng() % 4, corpus, TokenId{0});
    std::vector<std::vector<TokenId>> docs;
    for (std::size_t i = 0; i < corpus.size(); i += 60) {
      docs.emplace_back(corpus.begin() + static_cast<std::ptrdiff_t>(i),
                        corpus.begin() + static_cast<std::ptrdiff_t>(std::min(i + 60, corpus.size())));
    }
    auto static_sam = build_corpus(docs, 1000);
    static_sam.init_topk(1 + rng() % 8);

    DecodeConfig cfg;
    cfg.use_dynamic = rng() % 2;
    cfg.use_static = rng() % 2;
    cfg.use_aux = rng() % 2;
    cfg.draft_len = 1 + rng() % 40;
    cfg.l_bias = static_cast<std::int64_t>(rng() % 9);
    cfg.l_threshold = static_cast<std::int64_t>(rng() % 9);
    cfg.max_new_tokens = rng() % 200;
    const auto prompt = oracle::random_tokens(rng, 1 + rng() % 20, alphabet);
    const auto r = decode(prompt, model, cfg, &static_sam);
    CHECK(r.output == decode_plain(prompt, model, cfg.max_new_tokens));
  }
}

TEST_CASE("dynamic automaton after decoding equals a batch build") {
  std::mt19937_64 rng(4);
  const auto corpus = oracle::random_tokens(rng, 300, 4);
  const NgramOracle model(3, corpus);
  const auto prompt = oracle::random_tokens(rng, 30, 4);
  DecodeSession session(DecodeConfig::defaults(true));
  session.prefill(prompt);
  while (!session.finished()) session.step(model);
  CHECK(session.context().size() == prompt.size() + 256);
  CHECK(session.dynamic_sam() == build(session.context()));
  // The cursor tracks the longest suffix seen earlier in the context.
  const auto& ctx = session.context();
  const auto expect = oracle::longest_suffix_matches(std::span(ctx).first(ctx.size() - 1),
                                                     std::span(ctx)).back();
  CHECK(session.dynamic_cursor().match_len == expect.length);
}

TEST_CASE("config defaults and validation") {
  const auto with = DecodeConfig::defaults(true);
  CHECK(with.draft_len == 40);
  CHECK(with.l_bias == 5);
  CHECK(with.l_threshold == 5);
  const auto without = DecodeConfig::defaults(false, true);
  CHECK(without.l_bias == 0);
  CHECK(without.draft_len == 16);
  CHECK_FALSE(without.use_aux);

  DecodeConfig bad;
  bad.draft_len = 0;
  CHECK_THROWS_AS(bad.validate(), SamError);
  bad = DecodeConfig{};
  bad.aux_shape = {2, 0};
  CHECK_THROWS_AS(bad.validate(), SamError);
  CHECK_THROWS_AS(DecodeSession{bad}, SamError);
  const auto unfrozen = build(from_string("AB"), Flavor::kStatic);
  CHECK_THROWS_AS(DecodeSession(DecodeConfig{}, &unfrozen), SamError);
}

TEST_CASE("n-gram oracle") {
  // After A: B once, C once, so the tie goes to B.
  const NgramOracle model(1, from_string("ABxACx"));
  CHECK(model.next(from_string("A")) == TokenId('B'));
  CHECK(model.next(from_string("B")) == TokenId('x'));
  // Unseen context backs off to unigrams, where A and x tie at 2.
  CHECK(model.next(from_string("Q")) == TokenId('A'));
  const NgramOracle with_eos(1, from_string("ABxACx"), TokenId('x'));
  CHECK_FALSE(with_eos.next(from_string("B")));
  const NgramOracle empty(2, Tokens{});
  CHECK_FALSE(empty.next(from_string("A")));
}
