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
#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace samd {

using TokenId = std::uint32_t;
using NodeId = std::uint32_t;

inline constexpr NodeId kNoNode = std::numeric_limits<NodeId>::max();
inline constexpr TokenId kNoToken = std::numeric_limits<TokenId>::max();
inline constexpr std::size_t kDefaultTopK = 8;

class SamError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Flavor : std::uint8_t {
  kStatic = 0,   // built offline over a corpus, frozen by init_topk
  kDynamic = 1,  // extended online with expand
};

struct Successor {
  TokenId token = 0;
  NodeId node = kNoNode;
  double prob = 0.0;

  bool operator==(const Successor&) const = default;
};

struct SamNode {
  NodeId link = kNoNode;
  // Extension edges, kept sorted by token.
  std::vector<std::pair<TokenId, NodeId>> next;
  std::uint32_t length = 0;
  // 1-indexed end position of the earliest occurrence; 0 for the root.
  std::uint32_t min_endpos = 0;
  std::uint64_t freq = 0;
  // Populated by init_topk only; sorted by prob descending, then token.
  std::vector<Successor> topk;

  NodeId find(TokenId t) const;

  bool operator==(const SamNode&) const = default;
};

// Position of a match inside an automaton. match_len is the exact length of
// the longest matched suffix, which may be shorter than the state's length.
struct MatchCursor {
  NodeId state = 0;
  std::uint32_t match_len = 0;

  bool operator==(const MatchCursor&) const = default;
};

// Basic-step counters for transfer. Over any stream of L transfers from the
// root, link_hops + next_moves <= 2L.
struct TransferCounters {
  std::uint64_t calls = 0;
  std::uint64_t link_hops = 0;
  std::uint64_t next_moves = 0;

  std::uint64_t steps() const { return link_hops + next_moves; }
};

class SuffixAutomaton {
 public:
  explicit SuffixAutomaton(Flavor flavor = Flavor::kDynamic);

  // Appends one token to the reference. Throws SamError once frozen.
  void expand(TokenId t);

  // Longest suffix of (matched text ++ [t]) present in the reference.
  MatchCursor transfer(MatchCursor cursor, TokenId t,
                       TransferCounters* counters = nullptr) const;

  // Moves a cursor up the suffix-link tree until match_len exceeds the link
  // length. Needed after an expand split the cursor's state with a clone.
  MatchCursor renormalize(MatchCursor cursor) const;

  // Accumulates occurrence counts over the suffix-link tree, fills top-k
  // successors with transition probabilities, and freezes the automaton.
  void init_topk(std::size_t k = kDefaultTopK);

  // True iff the sequence is a substring of the reference.
  bool accepts(std::span<const TokenId> tokens) const;

  const std::vector<SamNode>& nodes() const { return nodes_; }
  const SamNode& node(NodeId id) const { return nodes_.at(id); }
  std::size_t size() const { return nodes_.size(); }
  NodeId root() const { return 0; }
  NodeId last() const { return last_; }
  std::uint32_t max_length() const { return max_length_; }
  Flavor flavor() const { return flavor_; }
  bool frozen() const { return frozen_; }
  std::size_t topk_k() const { return topk_k_; }
  const std::vector<TokenId>& reference() const { return reference_; }

  std::optional<TokenId> separator() const { return separator_; }
  void set_separator(std::optional<TokenId> sep) { separator_ = sep; }
  // 0 means no vocabulary was declared.
  std::uint32_t vocab_size() const { return vocab_size_; }
  void set_vocab_size(std::uint32_t n) { vocab_size_ = n; }

  std::size_t transition_count() const;
  // Each expand creates exactly one primary node; the rest are clones.
  std::size_t clone_count() const { return nodes_.size() - 1 - max_length_; }

  void reserve(std::size_t reference_len);

  bool operator==(const SuffixAutomaton&) const = default;

 private:
  friend SuffixAutomaton load(std::span<const std::uint8_t> bytes);

  NodeId add_node(NodeId link, std::uint32_t length, std::uint32_t min_endpos,
                  std::uint64_t freq);
  void set_edge(NodeId from, TokenId t, NodeId to);

  std::vector<SamNode> nodes_;
  std::vector<TokenId> reference_;
  NodeId last_ = 0;
  std::uint32_t max_length_ = 0;
  Flavor flavor_;
  bool frozen_ = false;
  std::size_t topk_k_ = 0;
  std::optional<TokenId> separator_;
  std::uint32_t vocab_size_ = 0;
};

SuffixAutomaton build(std::span<const TokenId> tokens,
                      Flavor flavor = Flavor::kDynamic);

// Concatenates docs with a trailing separator after each one and builds a
// static (not yet frozen) automaton. Throws SamError if sep occurs in a doc.
SuffixAutomaton build_corpus(const std::vector<std::vector<TokenId>>& docs,
                             TokenId sep);

// Binary container. save requires a frozen static automaton.
class FormatError : public SamError {
 public:
  using SamError::SamError;
};

inline constexpr std::uint32_t kFormatVersion = 1;

std::vector<std::uint8_t> save(const SuffixAutomaton& sam);
SuffixAutomaton load(std::span<const std::uint8_t> bytes);
void save_file(const SuffixAutomaton& sam, const std::string& path);
SuffixAutomaton load_file(const std::string& path);

}  // namespace samd
