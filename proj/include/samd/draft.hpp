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
#include <string_view>
#include <vector>

#include "samd/sam.hpp"

namespace samd {

enum class DraftSource : std::uint8_t {
  kDynamicSam = 0,
  kStaticSam = 1,
  kAuxiliary = 2,
};

std::string_view to_string(DraftSource source);

inline constexpr std::size_t kDefaultDraftLen = 40;
inline constexpr std::size_t kCodeDraftLen = 16;

// A candidate continuation. parents[i] < i, with -1 meaning "child of the
// last accepted token", so a tree draft may have several top-level nodes.
// Linear drafts have parents[i] == i - 1.
struct Draft {
  std::vector<TokenId> tokens;
  std::vector<std::int32_t> parents;
  // Product of transition probabilities from the anchor; tree drafts only.
  std::vector<double> path_probs;
  DraftSource source = DraftSource::kDynamicSam;
  // Match length (or virtual length) that justified the draft.
  std::int64_t score = 0;

  std::size_t size() const { return tokens.size(); }
  bool is_linear() const;
};

bool is_valid_tree(const Draft& draft);

// Slice of the reference right after the cursor state's earliest occurrence:
// reference[min_endpos + 1 .. min_endpos + n] (1-indexed), truncated at the
// reference end and at the first separator.
std::optional<Draft> draft_linear(const SuffixAutomaton& sam, MatchCursor cursor,
                                  std::size_t n);

// Max-probability expansion over top-k successors seeded at the cursor state.
// max_size counts the anchor, which is not emitted. Successors whose token is
// the separator are pruned. When pop_trace is set, every popped path
// probability (anchor included) is appended to it.
std::optional<Draft> draft_tree(const SuffixAutomaton& sam, MatchCursor cursor,
                                TokenId anchor, std::size_t max_size,
                                std::vector<double>* pop_trace = nullptr);

}  // namespace samd
