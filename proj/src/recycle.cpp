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

#include "samd/recycle.hpp"

#include <algorithm>

#include "samd/sam.hpp"

namespace samd {

RecycleTable::RecycleTable(std::size_t k) : k_(k) {
  if (k_ == 0) throw SamError("recycle table width must be positive");
}

void RecycleTable::observe_pair(TokenId a, TokenId b) {
  auto& row = rows_[a];
  auto it = std::find(row.begin(), row.end(), b);
  if (it == row.end()) {
    row.insert(row.begin(), b);
    if (row.size() > k_) row.pop_back();
  } else {
    std::rotate(row.begin(), it, it + 1);
  }
}

void RecycleTable::observe(std::span<const TokenId> context) {
  for (std::size_t i = 1; i < context.size(); ++i) observe_pair(context[i - 1], context[i]);
}

std::span<const TokenId> RecycleTable::row(TokenId t) const {
  auto it = rows_.find(t);
  if (it == rows_.end()) return {};
  return it->second;
}

std::size_t template_size(std::span<const std::size_t> shape) {
  std::size_t total = 0;
  std::size_t width = 1;
  for (std::size_t b : shape) {
    width *= b;
    total += width;
  }
  return total;
}

std::optional<Draft> draft_bfs(const RecycleTable& table, TokenId last_token,
                               std::span<const std::size_t> shape) {
  if (shape.empty() || table.row(last_token).empty()) return std::nullopt;
  Draft d;
  d.source = DraftSource::kAuxiliary;

  struct Frontier {
    TokenId token;
    std::int32_t slot;
  };
  std::vector<Frontier> level{{last_token, -1}};
  for (std::size_t depth = 0; depth < shape.size() && !level.empty(); ++depth) {
    std::vector<Frontier> next_level;
    for (const auto& f : level) {
      const auto row = table.row(f.token);
      const std::size_t take = std::min(shape[depth], row.size());
      for (std::size_t c = 0; c < take; ++c) {
        const auto slot = static_cast<std::int32_t>(d.tokens.size());
        d.tokens.push_back(row[c]);
        d.parents.push_back(f.slot);
        next_level.push_back({row[c], slot});
      }
    }
    level = std::move(next_level);
  }
  return d;
}

}  // namespace samd
