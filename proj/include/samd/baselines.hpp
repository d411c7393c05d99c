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
#include <optional>
#include <span>
#include <vector>

#include "samd/sam.hpp"

namespace samd {

// Token comparisons performed by a matcher.
struct CompareCounter {
  std::uint64_t comparisons = 0;
};

struct SuffixMatch {
  std::uint32_t length = 0;
  // 1-indexed earliest end position in the reference; 0 when length is 0.
  std::uint32_t end_pos = 0;

  bool operator==(const SuffixMatch&) const = default;
};

// Prompt-lookup style search: for n = max_n down to 1, find the earliest
// earlier occurrence of the last n tokens of text and return up to draft_len
// tokens that follow it.
std::optional<std::vector<TokenId>> ngram_match_brute(std::span<const TokenId> text,
                                                      std::size_t max_n,
                                                      std::size_t draft_len,
                                                      CompareCounter* counter = nullptr);

// Exhaustive longest suffix of query that occurs in reference, with the
// earliest end position. O(|reference| * |query|^2).
SuffixMatch suffix_longest_match_brute(std::span<const TokenId> reference,
                                       std::span<const TokenId> query);

// Suffix array over a reference with a sparse table for earliest positions.
class SuffixArrayIndex {
 public:
  explicit SuffixArrayIndex(std::vector<TokenId> reference);

  // Longest suffix of query, capped at max_n, found by binary search.
  // nullopt when not even the last token occurs.
  std::optional<SuffixMatch> match(std::span<const TokenId> query, std::size_t max_n,
                                   CompareCounter* counter = nullptr) const;

  const std::vector<std::uint32_t>& suffix_array() const { return sa_; }

 private:
  std::uint32_t min_start(std::size_t lo, std::size_t hi) const;

  std::vector<TokenId> ref_;
  std::vector<std::uint32_t> sa_;
  std::vector<std::vector<std::uint32_t>> sparse_;
};

}  // namespace samd
