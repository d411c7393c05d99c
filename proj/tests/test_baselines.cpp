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

#include <random>

#include "oracles.hpp"
#include "samd/baselines.hpp"

using namespace samd;
using oracle::from_string;
using oracle::Tokens;

TEST_CASE("prompt-lookup n-gram matcher") {
  SUBCASE("ABCAB") {
    const auto d = ngram_match_brute(from_string("ABCAB"), 2, 3);
    REQUIRE(d);
    CHECK(d->front() == TokenId('C'));
    CHECK(*d == from_string("CAB"));
  }
  SUBCASE("earliest occurrence wins") {
    const auto d = ngram_match_brute(from_string("ABXABYAB"), 2, 1);
    REQUIRE(d);
    CHECK(*d == from_string("X"));
  }
  SUBCASE("falls back to shorter n-grams") {
    const auto d = ngram_match_brute(from_string("ZBQCB"), 3, 2);
    REQUIRE(d);
    CHECK(*d == from_string("QC"));
  }
  SUBCASE("no repeat") {
    CHECK_FALSE(ngram_match_brute(from_string("ABCD"), 3, 4));
  }
  SUBCASE("single token") {
    CHECK_FALSE(ngram_match_brute(from_string("A"), 1, 4));
  }
  SUBCASE("counts comparisons") {
    CompareCounter c;
    ngram_match_brute(from_string("ABCDEFGH"), 2, 4, &c);
    CHECK(c.comparisons > 0);
  }
}

TEST_CASE("brute-force longest suffix match") {
  const auto t = from_string("ABCBC");
  CHECK(suffix_longest_match_brute(t, from_string("XBC")) == SuffixMatch{2, 3});
  CHECK(suffix_longest_match_brute(t, Tokens{}) == SuffixMatch{0, 0});
  CHECK(suffix_longest_match_brute(t, t) == SuffixMatch{5, 5});
  CHECK(suffix_longest_match_brute(t, from_string("Z")) == SuffixMatch{0, 0});
}

TEST_CASE("property: brute-force matcher equals the DP oracle") {
  std::mt19937_64 rng(2);
  for (int iter = 0; iter < 300; ++iter) {
    const TokenId alphabet = static_cast<TokenId>(2 + rng() % 4);
    const auto t = oracle::random_tokens(rng, rng() % 50, alphabet);
    const auto q = oracle::random_tokens(rng, 1 + rng() % 20, alphabet);
    const auto expect = oracle::longest_suffix_matches(t, q).back();
    const auto got = suffix_longest_match_brute(t, q);
    CHECK(got.length == expect.length);
    CHECK(got.end_pos == expect.end_pos);
  }
}

TEST_CASE("suffix array index") {
  SUBCASE("suffix array is sorted") {
    const auto t = from_string("banana");
    const SuffixArrayIndex idx(t);
    CHECK(idx.suffix_array() == std::vector<std::uint32_t>{5, 3, 1, 0, 4, 2});
  }
  SUBCASE("empty reference") {
    const SuffixArrayIndex idx(Tokens{});
    CHECK_FALSE(idx.match(from_string("AB"), 3));
  }
  SUBCASE("max_n of one finds the first occurrence of the last token") {
    const SuffixArrayIndex idx(from_string("XABAB"));
    const auto m = idx.match(from_string("QQB"), 1);
    REQUIRE(m);
    CHECK(*m == SuffixMatch{1, 3});
  }
  SUBCASE("absent last token") {
    const SuffixArrayIndex idx(from_string("ABC"));
    CHECK_FALSE(idx.match(from_string("AZ"), 2));
  }
}

TEST_CASE("property: suffix array agrees with brute force capped at max_n") {
  std::mt19937_64 rng(3);
  for (int iter = 0; iter < 500; ++iter) {
    const TokenId alphabet = static_cast<TokenId>(2 + rng() % 6);
    const auto t = oracle::random_tokens(rng, rng() % 120, alphabet);
    const auto q = oracle::random_tokens(rng, 1 + rng() % 20, alphabet);
    const std::size_t max_n = 1 + rng() % 8;
    const SuffixArrayIndex idx(t);
    const auto full = suffix_longest_match_brute(t, q);
    const auto capped = suffix_longest_match_brute(
        t, std::span<const TokenId>(q).last(std::min(max_n, q.size())));
    CHECK(capped.length == std::min<std::uint32_t>(full.length, max_n));
    const auto m = idx.match(q, max_n);
    if (capped.length == 0) {
      CHECK_FALSE(m);
    } else {
      REQUIRE(m);
      CHECK(*m == capped);
    }
  }
}
