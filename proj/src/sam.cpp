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

#include "samd/sam.hpp"

#include <algorithm>

namespace samd {

NodeId SamNode::find(TokenId t) const {
  auto it = std::lower_bound(
      next.begin(), next.end(), t,
      [](const std::pair<TokenId, NodeId>& e, TokenId v) { return e.first < v; });
  if (it == next.end() || it->first != t) return kNoNode;
  return it->second;
}

SuffixAutomaton::SuffixAutomaton(Flavor flavor) : flavor_(flavor) {
  // Root: link none, length 0, min_endpos 0, freq 0.
  nodes_.emplace_back();
}

void SuffixAutomaton::reserve(std::size_t reference_len) {
  reference_.reserve(reference_len);
  nodes_.reserve(2 * reference_len + 1);
}

NodeId SuffixAutomaton::add_node(NodeId link, std::uint32_t length,
                                 std::uint32_t min_endpos, std::uint64_t freq) {
  if (nodes_.size() >= kNoNode) throw SamError("automaton node pool exhausted");
  SamNode n;
  n.link = link;
  n.length = length;
  n.min_endpos = min_endpos;
  n.freq = freq;
  nodes_.push_back(std::move(n));
  return static_cast<NodeId>(nodes_.size() - 1);
}

void SuffixAutomaton::set_edge(NodeId from, TokenId t, NodeId to) {
  auto& next = nodes_[from].next;
  auto it = std::lower_bound(
      next.begin(), next.end(), t,
      [](const std::pair<TokenId, NodeId>& e, TokenId v) { return e.first < v; });
  if (it != next.end() && it->first == t) {
    it->second = to;
  } else {
    next.insert(it, {t, to});
  }
}

void SuffixAutomaton::expand(TokenId t) {
  if (frozen_) throw SamError("expand called on a frozen automaton");
  if (max_length_ == std::numeric_limits<std::uint32_t>::max() - 1) {
    throw SamError("reference length exceeds 32-bit positions");
  }
  reference_.push_back(t);
  const std::uint32_t len = ++max_length_;
  const NodeId cur = add_node(kNoNode, len, len, 1);

  NodeId p = last_;
  while (p != kNoNode && nodes_[p].find(t) == kNoNode) {
    set_edge(p, t, cur);
    p = nodes_[p].link;
  }
  if (p == kNoNode) {
    nodes_[cur].link = root();
  } else {
    const NodeId q = nodes_[p].find(t);
    if (nodes_[p].length + 1 == nodes_[q].length) {
      nodes_[cur].link = q;
    } else {
      const NodeId cl = add_node(nodes_[q].link, nodes_[p].length + 1,
                                 nodes_[q].min_endpos, 0);
      nodes_[cl].next = nodes_[q].next;
      while (p != kNoNode && nodes_[p].find(t) == q) {
        set_edge(p, t, cl);
        p = nodes_[p].link;
      }
      nodes_[q].link = cl;
      nodes_[cur].link = cl;
    }
  }
  last_ = cur;
}

MatchCursor SuffixAutomaton::transfer(MatchCursor cursor, TokenId t,
                                      TransferCounters* counters) const {
  NodeId s = cursor.state;
  std::uint32_t l = cursor.match_len;
  std::uint64_t hops = 0;
  while (s != root() && nodes_[s].find(t) == kNoNode) {
    s = nodes_[s].link;
    l = nodes_[s].length;
    ++hops;
  }
  const NodeId nx = nodes_[s].find(t);
  MatchCursor out{root(), 0};
  if (nx != kNoNode) out = {nx, l + 1};
  if (counters) {
    ++counters->calls;
    counters->link_hops += hops;
    if (nx != kNoNode) ++counters->next_moves;
  }
  return out;
}

MatchCursor SuffixAutomaton::renormalize(MatchCursor cursor) const {
  while (cursor.state != root() &&
         cursor.match_len <= nodes_[nodes_[cursor.state].link].length) {
    cursor.state = nodes_[cursor.state].link;
  }
  return cursor;
}

void SuffixAutomaton::init_topk(std::size_t k) {
  if (flavor_ != Flavor::kStatic) {
    throw SamError("init_topk requires a static automaton");
  }
  if (frozen_) throw SamError("init_topk called twice");
  if (k == 0) throw SamError("top-k size must be positive");

  // Counting sort by length, then push counts up the suffix-link tree from
  // the longest states down.
  std::vector<std::uint32_t> bucket(max_length_ + 2, 0);
  for (const auto& n : nodes_) ++bucket[n.length];
  for (std::size_t i = 1; i < bucket.size(); ++i) bucket[i] += bucket[i - 1];
  std::vector<NodeId> order(nodes_.size());
  for (NodeId v = static_cast<NodeId>(nodes_.size()); v-- > 0;) {
    order[--bucket[nodes_[v].length]] = v;
  }
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    const auto& n = nodes_[*it];
    if (n.link != kNoNode) nodes_[n.link].freq += n.freq;
  }

  for (auto& n : nodes_) {
    n.topk.clear();
    if (n.next.empty()) continue;
    std::vector<Successor> cands;
    cands.reserve(n.next.size());
    for (const auto& [tok, child] : n.next) cands.push_back({tok, child, 0.0});
    std::sort(cands.begin(), cands.end(), [&](const Successor& a, const Successor& b) {
      const auto fa = nodes_[a.node].freq;
      const auto fb = nodes_[b.node].freq;
      if (fa != fb) return fa > fb;
      return a.token < b.token;
    });
    if (cands.size() > k) cands.resize(k);
    for (auto& c : cands) {
      c.prob = static_cast<double>(nodes_[c.node].freq) / static_cast<double>(n.freq);
    }
    n.topk = std::move(cands);
  }
  topk_k_ = k;
  frozen_ = true;
}

bool SuffixAutomaton::accepts(std::span<const TokenId> tokens) const {
  NodeId s = root();
  for (TokenId t : tokens) {
    s = nodes_[s].find(t);
    if (s == kNoNode) return false;
  }
  return true;
}

std::size_t SuffixAutomaton::transition_count() const {
  std::size_t total = 0;
  for (const auto& n : nodes_) total += n.next.size();
  return total;
}

SuffixAutomaton build(std::span<const TokenId> tokens, Flavor flavor) {
  SuffixAutomaton sam(flavor);
  sam.reserve(tokens.size());
  for (TokenId t : tokens) sam.expand(t);
  return sam;
}

SuffixAutomaton build_corpus(const std::vector<std::vector<TokenId>>& docs,
                             TokenId sep) {
  std::size_t total = 0;
  for (std::size_t i = 0; i < docs.size(); ++i) {
    if (std::find(docs[i].begin(), docs[i].end(), sep) != docs[i].end()) {
      throw SamError("separator token " + std::to_string(sep) +
                     " occurs inside document " + std::to_string(i));
    }
    total += docs[i].size() + 1;
  }
  SuffixAutomaton sam(Flavor::kStatic);
  sam.reserve(total);
  sam.set_separator(sep);
  for (const auto& doc : docs) {
    for (TokenId t : doc) sam.expand(t);
    sam.expand(sep);
  }
  return sam;
}

}  // namespace samd
