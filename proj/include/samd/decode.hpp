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
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include <json.hpp>

#include "samd/draft.hpp"
#include "samd/oracle.hpp"
#include "samd/recycle.hpp"
#include "samd/sam.hpp"

namespace samd {

inline constexpr std::int64_t kDefaultLBias = 5;
inline constexpr std::int64_t kDefaultLThreshold = 5;

struct DecodeConfig {
  std::size_t draft_len = kDefaultDraftLen;
  // Node budget for static tree drafts, anchor included. 0 means draft_len.
  std::size_t tree_size = 0;
  bool use_dynamic = true;
  bool use_static = true;  // only effective when a static automaton is given
  bool use_aux = true;
  std::int64_t l_bias = kDefaultLBias;
  std::int64_t l_threshold = kDefaultLThreshold;
  std::size_t max_new_tokens = 256;
  std::size_t aux_k = 8;
  std::vector<std::size_t> aux_shape{kDefaultRecycleShape.begin(),
                                     kDefaultRecycleShape.end()};

  // l_bias drops to 0 without an auxiliary drafter; code uses 16-token drafts.
  static DecodeConfig defaults(bool with_aux, bool code_profile = false);

  // Throws SamError on an unusable configuration.
  void validate() const;
};

struct SelectionInput {
  std::uint32_t l_static = 0;
  std::uint32_t l_dynamic = 0;
  bool has_static = false;
  bool has_dynamic = false;
  bool has_aux = false;
  std::int64_t l_bias = kDefaultLBias;
  std::int64_t l_threshold = kDefaultLThreshold;
};

// Scores: dynamic l_dynamic, static l_static - l_bias, auxiliary l_threshold.
// Highest wins; ties go dynamic, then static, then auxiliary. nullopt when no
// source has a draft.
std::optional<DraftSource> select_draft(const SelectionInput& in);

struct VerifyOutcome {
  std::size_t accepted = 0;
  std::size_t emitted = 0;  // accepted + the correction/bonus token
  bool done = false;        // oracle reached end of sequence
};

// Greedy verification. Emitted tokens are appended to context; at most
// max_emit tokens are produced.
VerifyOutcome verify_linear(const Oracle& oracle, std::vector<TokenId>& context,
                            std::span<const TokenId> draft, std::size_t max_emit);
VerifyOutcome verify_tree(const Oracle& oracle, std::vector<TokenId>& context,
                          const Draft& draft, std::size_t max_emit);

struct StepOutcome {
  std::optional<DraftSource> source;  // nullopt: plain single-token step
  std::size_t draft_size = 0;
  std::size_t accepted = 0;
  std::size_t emitted = 0;
  bool done = false;
};

struct SourceStats {
  std::uint64_t steps = 0;
  std::uint64_t tokens = 0;
  std::uint64_t accepted = 0;
  std::uint64_t drafted = 0;

  double mat() const { return steps ? static_cast<double>(tokens) / steps : 0.0; }
};

// Tokens per step include the correction token, so MAT >= 1.
struct DecodeMetrics {
  static constexpr std::size_t kPlain = 3;

  std::uint64_t steps = 0;
  std::uint64_t tokens = 0;
  // Indexed by DraftSource, plus kPlain for steps without a draft.
  std::array<SourceStats, 4> per_source{};

  double mat() const { return steps ? static_cast<double>(tokens) / steps : 0.0; }
  double share(std::size_t bucket) const {
    return steps ? static_cast<double>(per_source[bucket].steps) / steps : 0.0;
  }
  void record(const StepOutcome& step);
  nlohmann::json to_json() const;
};

// One decoding session: owns the dynamic automaton, both cursors and the
// recycle table. The static automaton is borrowed and may be shared.
class DecodeSession {
 public:
  DecodeSession(DecodeConfig config, const SuffixAutomaton* static_sam = nullptr);

  void prefill(std::span<const TokenId> prompt);
  StepOutcome step(const Oracle& oracle);
  bool finished() const { return done_ || generated_ >= config_.max_new_tokens; }

  const std::vector<TokenId>& context() const { return context_; }
  std::span<const TokenId> output() const;
  const SuffixAutomaton& dynamic_sam() const { return dynamic_; }
  MatchCursor dynamic_cursor() const { return dyn_cursor_; }
  MatchCursor static_cursor() const { return static_cursor_; }
  const RecycleTable& recycle() const { return table_; }
  const DecodeMetrics& metrics() const { return metrics_; }

 private:
  void advance(TokenId t);

  DecodeConfig config_;
  const SuffixAutomaton* static_sam_;
  SuffixAutomaton dynamic_{Flavor::kDynamic};
  MatchCursor dyn_cursor_{};
  MatchCursor static_cursor_{};
  RecycleTable table_;
  std::vector<TokenId> context_;
  std::size_t prompt_len_ = 0;
  std::size_t generated_ = 0;
  bool done_ = false;
  DecodeMetrics metrics_;
};

struct DecodeResult {
  std::vector<TokenId> output;
  DecodeMetrics metrics;
};

DecodeResult decode(std::span<const TokenId> prompt, const Oracle& oracle,
                    const DecodeConfig& config,
                    const SuffixAutomaton* static_sam = nullptr);

// Token-by-token reference decoding.
std::vector<TokenId> decode_plain(std::span<const TokenId> prompt, const Oracle& oracle,
                                  std::size_t max_new_tokens);

}  // namespace samd
