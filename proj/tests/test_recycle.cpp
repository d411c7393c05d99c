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
#include "samd/recycle.hpp"

using namespace samd;
using oracle::from_string;
using oracle::Tokens;

namespace {

Tokens row_of(const RecycleTable& t, char c) {
  const auto r = t.row(static_cast<TokenId>(c));
  return Tokens(r.begin(), r.end());
}

}  // namespace

TEST_CASE("observe records bigrams") {
  RecycleTable table;
  table.observe(from_string("ABAB"));
  CHECK(row_of(table, 'A') == from_string("B"));
  CHECK(row_of(table, 'B') == from_string("A"));
  CHECK(table.rows() == 2);
}

TEST_CASE("most recent successor comes first") {
  RecycleTable table;
  table.observe(from_string("AB"));
  table.observe(from_string("AC"));
  CHECK(row_of(table, 'A') == from_string("CB"));
  table.observe(from_string("AB"));
  CHECK(row_of(table, 'A') == from_string("BC"));
}

TEST_CASE("rows are deduplicated and truncated") {
  RecycleTable table(2);
  table.observe(from_string("ACABAA"));
  CHECK(row_of(table, 'A') == from_string("AB"));
  CHECK_THROWS_AS(RecycleTable(0), SamError);
}

TEST_CASE("bfs drafts") {
  SUBCASE("empty table") {
    RecycleTable table;
    const std::array<std::size_t, 2> shape{1, 1};
    CHECK_FALSE(draft_bfs(table, 'A', shape));
  }
  SUBCASE("forced chain") {
    RecycleTable table;
    table.observe(from_string("ABC"));
    const std::array<std::size_t, 2> shape{1, 1};
    const auto d = draft_bfs(table, 'A', shape);
    REQUIRE(d);
    CHECK(d->tokens == from_string("BC"));
    CHECK(d->is_linear());
    CHECK(d->source == DraftSource::kAuxiliary);
  }
  SUBCASE("empty shape") {
    RecycleTable table;
    table.observe(from_string("AB"));
    CHECK_FALSE(draft_bfs(table, 'A', std::span<const std::size_t>{}));
  }
  SUBCASE("level order with branching") {
    RecycleTable table;
    table.observe(from_string("ABACBDCE"));
    // A -> [C, B], B -> [D, A], C -> [E, B]
    const std::array<std::size_t, 2> shape{2, 1};
    const auto d = draft_bfs(table, 'A', shape);
    REQUIRE(d);
    CHECK(d->tokens == from_string("CBED"));
    CHECK(d->parents == std::vector<std::int32_t>{-1, -1, 0, 1});
  }
}

TEST_CASE("template sizes") {
  CHECK(template_size(kDefaultRecycleShape) == 4 + 8 + 16 + 16 + 16);
  const std::array<std::size_t, 3> shape{2, 2, 1};
  CHECK(template_size(shape) == 10);
}

TEST_CASE("property: bfs drafts respect the template") {
  std::mt19937_64 rng(8);
  const std::array<std::size_t, 3> shape{2, 2, 1};
  for (int iter = 0; iter < 300; ++iter) {
    RecycleTable table(1 + rng() % 4);
    table.observe(oracle::random_tokens(rng, rng() % 60, 2 + rng() % 6));
    const TokenId last = static_cast<TokenId>(rng() % 6);
    const auto d = draft_bfs(table, last, shape);
    if (table.row(last).empty()) {
      CHECK_FALSE(d);
      continue;
    }
    REQUIRE(d);
    CHECK(is_valid_tree(*d));
    CHECK(d->size() <= template_size(shape));
    // Level 0 is a prefix of the anchor's row.
    std::size_t top = 0;
    for (std::size_t i = 0; i < d->size(); ++i) {
      if (d->parents[i] == -1) CHECK(d->tokens[i] == table.row(last)[top++]);
    }
    CHECK(top == std::min<std::size_t>(2, table.row(last).size()));
    // Each child follows its parent in the parent's row.
    for (std::size_t i = 0; i < d->size(); ++i) {
      const auto p = d->parents[i];
      const TokenId from = p < 0 ? last : d->tokens[static_cast<std::size_t>(p)];
      const auto row = table.row(from);
      CHECK(std::find(row.begin(), row.end(), d->tokens[i]) != row.end());
    }
    for (std::size_t i = 0; i < 8; ++i) CHECK(table.row(static_cast<TokenId>(i)).size() <= table.k());
  }
}

TEST_CASE("property: observe is idempotent on a repeated context") {
  std::mt19937_64 rng(9);
  for (int iter = 0; iter < 200; ++iter) {
    const auto ctx = oracle::random_tokens(rng, rng() % 40, 2 + rng() % 5);
    RecycleTable once(3), twice(3);
    once.observe(ctx);
    twice.observe(ctx);
    twice.observe(ctx);
    CHECK(once.rows() == twice.rows());
    for (TokenId t = 0; t < 8; ++t) {
      const auto a = once.row(t), b = twice.row(t);
      CHECK(Tokens(a.begin(), a.end()) == Tokens(b.begin(), b.end()));
    }
  }
}
