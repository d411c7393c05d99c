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

#include "samd/baselines.hpp"

#include <algorithm>
#include <bit>
#include <numeric>

namespace samd {

std::optional<std::vector<TokenId>> ngram_match_brute(std::span<const TokenId> text,
                                                      std::size_t max_n,
                                                      std::size_t draft_len,
                                                      CompareCounter* counter) {
  const std::size_t len = text.size();
  if (len < 2 || max_n == 0 || draft_len == 0) return std::nullopt;
  std::uint64_t cmps = 0;
  std::optional<std::vector<TokenId>> result;
  for (std::size_t n = std::min(max_n, len - 1); n >= 1 && !result; --n) {
    const auto suffix = text.subspan(len - n);
    // Occurrences must start before the suffix itself.
    for (std::size_t i = 0; i + n < len; ++i) {
      std::size_t j = 0;
      while (j < n) {
        ++cmps;
        if (text[i + j] != suffix[j]) break;
        ++j;
      }
      if (j == n) {
        const std::size_t end = std::min(len, i + n + draft_len);
        result.emplace(text.begin() + static_cast<std::ptrdiff_t>(i + n),
                       text.begin() + static_cast<std::ptrdiff_t>(end));
        break;
      }
    }
  }
  if (counter) counter->comparisons += cmps;
  return result;
}

SuffixMatch suffix_longest_match_brute(std::span<const TokenId> reference,
                                       std::span<const TokenId> query) {
  const std::size_t top = std::min(reference.size(), query.size());
  for (std::size_t len = top; len >= 1; --len) {
    const auto suffix = query.subspan(query.size() - len);
    for (std::size_t start = 0; start + len <= reference.size(); ++start) {
      if (std::equal(suffix.begin(), suffix.end(),
                     reference.begin() + static_cast<std::ptrdiff_t>(start))) {
        return {static_cast<std::uint32_t>(len), static_cast<std::uint32_t>(start + len)};
      }
    }
  }
  return {};
}

SuffixArrayIndex::SuffixArrayIndex(std::vector<TokenId> reference)
    : ref_(std::move(reference)) {
  const std::size_t n = ref_.size();
  sa_.resize(n);
  std::iota(sa_.begin(), sa_.end(), 0u);
  if (n == 0) return;

  // Prefix doubling on (rank[i], rank[i + k]) pairs.
  std::vector<std::uint64_t> rank(ref_.begin(), ref_.end());
  std::vector<std::uint64_t> tmp(n);
  for (std::size_t k = 1;; k <<= 1) {
    auto key = [&](std::uint32_t i) {
      return std::pair<std::uint64_t, std::uint64_t>(rank[i], i + k < n ? rank[i + k] + 1 : 0);
    };
    std::sort(sa_.begin(), sa_.end(),
              [&](std::uint32_t a, std::uint32_t b) { return key(a) < key(b); });
    tmp[sa_[0]] = 0;
    for (std::size_t i = 1; i < n; ++i) {
      tmp[sa_[i]] = tmp[sa_[i - 1]] + (key(sa_[i - 1]) < key(sa_[i]) ? 1 : 0);
    }
    rank.swap(tmp);
    if (rank[sa_[n - 1]] == n - 1 || k >= n) break;
  }

  sparse_.push_back(sa_);
  for (std::size_t w = 1; 2 * w <= n; w <<= 1) {
    const auto& prev = sparse_.back();
    std::vector<std::uint32_t> level(n - 2 * w + 1);
    for (std::size_t i = 0; i < level.size(); ++i) {
      level[i] = std::min(prev[i], prev[i + w]);
    }
    sparse_.push_back(std::move(level));
  }
}

std::uint32_t SuffixArrayIndex::min_start(std::size_t lo, std::size_t hi) const {
  const std::size_t span = hi - lo;
  const auto level = static_cast<std::size_t>(std::bit_width(span) - 1);
  return std::min(sparse_[level][lo], sparse_[level][hi - (std::size_t{1} << level)]);
}

std::optional<SuffixMatch> SuffixArrayIndex::match(std::span<const TokenId> query,
                                                   std::size_t max_n,
                                                   CompareCounter* counter) const {
  if (ref_.empty() || query.empty() || max_n == 0) return std::nullopt;
  std::uint64_t cmps = 0;
  // Three-way compare of the suffix of ref_ at `start` against the pattern,
  // looking only at the first |pattern| tokens.
  auto compare = [&](std::uint32_t start, std::span<const TokenId> pat) {
    for (std::size_t j = 0; j < pat.size(); ++j) {
      if (start + j >= ref_.size()) return -1;
      ++cmps;
      if (ref_[start + j] != pat[j]) return ref_[start + j] < pat[j] ? -1 : 1;
    }
    return 0;
  };
  std::optional<SuffixMatch> result;
  for (std::size_t n = std::min(max_n, query.size()); n >= 1; --n) {
    const auto pat = query.subspan(query.size() - n);
    auto lo = std::partition_point(sa_.begin(), sa_.end(),
                                   [&](std::uint32_t s) { return compare(s, pat) < 0; });
    auto hi = std::partition_point(lo, sa_.end(),
                                   [&](std::uint32_t s) { return compare(s, pat) == 0; });
    if (lo != hi) {
      const auto first = min_start(static_cast<std::size_t>(lo - sa_.begin()),
                                   static_cast<std::size_t>(hi - sa_.begin()));
      result = SuffixMatch{static_cast<std::uint32_t>(n), static_cast<std::uint32_t>(first + n)};
      break;
    }
  }
  if (counter) counter->comparisons += cmps;
  return result;
}

}  // namespace samd
