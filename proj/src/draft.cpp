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

#include "samd/draft.hpp"

#include <queue>

namespace samd {

std::string_view to_string(DraftSource source) {
  switch (source) {
    case DraftSource::kDynamicSam:
      return "dynamic_sam";
    case DraftSource::kStaticSam:
      return "static_sam";
    case DraftSource::kAuxiliary:
      return "auxiliary";
  }
  return "unknown";
}

bool Draft::is_linear() const {
  for (std::size_t i = 0; i < parents.size(); ++i) {
    if (parents[i] != static_cast<std::int32_t>(i) - 1) return false;
  }
  return true;
}

bool is_valid_tree(const Draft& draft) {
  if (draft.tokens.empty() || draft.parents.size() != draft.tokens.size()) return false;
  if (draft.parents[0] != -1) return false;
  for (std::size_t i = 0; i < draft.parents.size(); ++i) {
    const auto p = draft.parents[i];
    if (p < -1 || p >= static_cast<std::int32_t>(i)) return false;
  }
  return draft.path_probs.empty() || draft.path_probs.size() == draft.tokens.size();
}

std::optional<Draft> draft_linear(const SuffixAutomaton& sam, MatchCursor cursor,
                                  std::size_t n) {
  if (cursor.match_len == 0 || n == 0) return std::nullopt;
  const auto& ref = sam.reference();
  const auto sep = sam.separator();
  // min_endpos is 1-indexed, so it is also the 0-based index of the next token.
  std::size_t pos = sam.node(cursor.state).min_endpos;
  Draft d;
  d.source = sam.flavor() == Flavor::kDynamic ? DraftSource::kDynamicSam
                                              : DraftSource::kStaticSam;
  d.score = cursor.match_len;
  while (pos < ref.size() && d.tokens.size() < n) {
    if (sep && ref[pos] == *sep) break;
    d.parents.push_back(static_cast<std::int32_t>(d.tokens.size()) - 1);
    d.tokens.push_back(ref[pos++]);
  }
  if (d.tokens.empty()) return std::nullopt;
  return d;
}

namespace {

struct PrimItem {
  double path_prob;
  TokenId token;
  std::uint64_t seq;
  NodeId state;
  std::int32_t parent_slot;
};

struct PrimOrder {
  // std::priority_queue pops the "largest"; larger means higher prob, then
  // smaller token, then earlier insertion.
  bool operator()(const PrimItem& a, const PrimItem& b) const {
    if (a.path_prob != b.path_prob) return a.path_prob < b.path_prob;
    if (a.token != b.token) return a.token > b.token;
    return a.seq > b.seq;
  }
};

}  // namespace

std::optional<Draft> draft_tree(const SuffixAutomaton& sam, MatchCursor cursor,
                                TokenId anchor, std::size_t max_size,
                                std::vector<double>* pop_trace) {
  if (sam.flavor() != Flavor::kStatic || !sam.frozen()) {
    throw SamError("tree drafting needs a frozen static automaton");
  }
  if (cursor.match_len == 0 || max_size < 2) return std::nullopt;
  const auto sep = sam.separator();

  std::priority_queue<PrimItem, std::vector<PrimItem>, PrimOrder> queue;
  std::uint64_t seq = 0;
  queue.push({1.0, anchor, seq++, cursor.state, -2});

  Draft d;
  d.source = DraftSource::kStaticSam;
  d.score = cursor.match_len;
  std::size_t popped = 0;
  while (!queue.empty() && popped != max_size) {
    const PrimItem item = queue.top();
    queue.pop();
    ++popped;
    if (pop_trace) pop_trace->push_back(item.path_prob);
    // The anchor is slot -1; emitted nodes take slots 0, 1, ...
    std::int32_t slot = -1;
    if (item.parent_slot != -2) {
      slot = static_cast<std::int32_t>(d.tokens.size());
      d.tokens.push_back(item.token);
      d.parents.push_back(item.parent_slot);
      d.path_probs.push_back(item.path_prob);
    }
    for (const auto& succ : sam.node(item.state).topk) {
      if (sep && succ.token == *sep) continue;
      queue.push({item.path_prob * succ.prob, succ.token, seq++, succ.node, slot});
    }
  }
  if (d.tokens.empty()) return std::nullopt;
  return d;
}

}  // namespace samd
