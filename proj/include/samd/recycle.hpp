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

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <unordered_map>
#include <vector>

#include "samd/draft.hpp"

namespace samd {

inline constexpr std::array<std::size_t, 5> kDefaultRecycleShape = {4, 2, 2, 1, 1};

// Per-token successor lists, most recent first. A recency stand-in for the
// top-k next-token table of Token Recycling.
class RecycleTable {
 public:
  explicit RecycleTable(std::size_t k = 8);

  // Promotes b to the front of row(a) for each adjacent pair (a, b).
  void observe(std::span<const TokenId> context);
  void observe_pair(TokenId a, TokenId b);

  std::span<const TokenId> row(TokenId t) const;
  std::size_t k() const { return k_; }
  std::size_t rows() const { return rows_.size(); }

 private:
  std::size_t k_;
  std::unordered_map<TokenId, std::vector<TokenId>> rows_;
};

// Level-order expansion from last_token. Each node at depth i gets up to
// shape[i] children taken from the front of its row.
std::optional<Draft> draft_bfs(const RecycleTable& table, TokenId last_token,
                               std::span<const std::size_t> shape);

// Node count of a fully populated template.
std::size_t template_size(std::span<const std::size_t> shape);

}  // namespace samd
