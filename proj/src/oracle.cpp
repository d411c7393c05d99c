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

#include "samd/oracle.hpp"

namespace samd {

ReplayOracle::ReplayOracle(std::vector<TokenId> target, std::size_t prompt_len)
    : target_(std::move(target)), prompt_len_(prompt_len) {}

std::optional<TokenId> ReplayOracle::next(std::span<const TokenId> context) const {
  if (context.size() < prompt_len_) return std::nullopt;
  const std::size_t i = context.size() - prompt_len_;
  if (i >= target_.size()) return std::nullopt;
  return target_[i];
}

NgramOracle::NgramOracle(std::size_t order, std::span<const TokenId> corpus,
                         std::optional<TokenId> eos)
    : order_(order), eos_(eos), best_(order + 1) {
  for (std::size_t j = 0; j <= order_; ++j) {
    std::map<std::vector<TokenId>, std::map<TokenId, std::uint64_t>> counts;
    for (std::size_t i = j; i < corpus.size(); ++i) {
      std::vector<TokenId> key(corpus.begin() + static_cast<std::ptrdiff_t>(i - j),
                               corpus.begin() + static_cast<std::ptrdiff_t>(i));
      ++counts[std::move(key)][corpus[i]];
    }
    for (const auto& [key, succ] : counts) {
      TokenId arg = 0;
      std::uint64_t top = 0;
      // std::map iterates tokens ascending, so strict > keeps the smallest.
      for (const auto& [tok, c] : succ) {
        if (c > top) {
          top = c;
          arg = tok;
        }
      }
      best_[j].emplace(key, arg);
    }
  }
}

std::optional<TokenId> NgramOracle::next(std::span<const TokenId> context) const {
  const std::size_t max_j = std::min(order_, context.size());
  for (std::size_t j = max_j + 1; j-- > 0;) {
    std::vector<TokenId> key(context.end() - static_cast<std::ptrdiff_t>(j), context.end());
    auto it = best_[j].find(key);
    if (it == best_[j].end()) continue;
    if (eos_ && it->second == *eos_) return std::nullopt;
    return it->second;
  }
  return std::nullopt;
}

}  // namespace samd
