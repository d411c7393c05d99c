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

#include "samd/decode.hpp"

#include <string>

namespace samd {

DecodeConfig DecodeConfig::defaults(bool with_aux, bool code_profile) {
  DecodeConfig c;
  c.use_aux = with_aux;
  c.l_bias = with_aux ? kDefaultLBias : 0;
  c.draft_len = code_profile ? kCodeDraftLen : kDefaultDraftLen;
  return c;
}

void DecodeConfig::validate() const {
  if (draft_len == 0) throw SamError("draft length must be positive");
  if (tree_size == 1) throw SamError("tree size must leave room for one draft token");
  if (use_aux) {
    if (aux_k == 0) throw SamError("recycle width must be positive");
    if (aux_shape.empty()) throw SamError("recycle tree shape must be non-empty");
    for (auto b : aux_shape) {
      if (b == 0) throw SamError("recycle branching factors must be positive");
    }
  }
}

std::optional<DraftSource> select_draft(const SelectionInput& in) {
  std::optional<DraftSource> best;
  std::int64_t best_score = 0;
  auto consider = [&](bool available, DraftSource src, std::int64_t score) {
    if (!available) return;
    // Candidates arrive in tie-break order; ties keep the earlier one.
    if (!best || score > best_score) {
      best = src;
      best_score = score;
    }
  };
  consider(in.has_dynamic, DraftSource::kDynamicSam, in.l_dynamic);
  consider(in.has_static, DraftSource::kStaticSam,
           static_cast<std::int64_t>(in.l_static) - in.l_bias);
  consider(in.has_aux, DraftSource::kAuxiliary, in.l_threshold);
  return best;
}

VerifyOutcome verify_linear(const Oracle& oracle, std::vector<TokenId>& context,
                            std::span<const TokenId> draft, std::size_t max_emit) {
  VerifyOutcome out;
  while (out.emitted < max_emit) {
    const auto tok = oracle.next(context);
    if (!tok) {
      out.done = true;
      break;
    }
    context.push_back(*tok);
    ++out.emitted;
    if (out.accepted < draft.size() && *tok == draft[out.accepted]) {
      ++out.accepted;
      continue;
    }
    break;
  }
  return out;
}

VerifyOutcome verify_tree(const Oracle& oracle, std::vector<TokenId>& context,
                          const Draft& draft, std::size_t max_emit) {
  std::vector<std::vector<std::int32_t>> children(draft.size() + 1);
  for (std::size_t i = 0; i < draft.size(); ++i) {
    children[static_cast<std::size_t>(draft.parents[i] + 1)].push_back(
        static_cast<std::int32_t>(i));
  }
  VerifyOutcome out;
  std::int32_t cur = -1;
  while (out.emitted < max_emit) {
    const auto tok = oracle.next(context);
    if (!tok) {
      out.done = true;
      break;
    }
    context.push_back(*tok);
    ++out.emitted;
    std::int32_t match = -1;
    for (auto c : children[static_cast<std::size_t>(cur + 1)]) {
      if (draft.tokens[static_cast<std::size_t>(c)] == *tok) {
        match = c;
        break;
      }
    }
    if (match < 0) break;
    ++out.accepted;
    cur = match;
  }
  return out;
}

void DecodeMetrics::record(const StepOutcome& step) {
  if (step.emitted == 0) return;
  ++steps;
  tokens += step.emitted;
  auto& s = per_source[step.source ? static_cast<std::size_t>(*step.source) : kPlain];
  ++s.steps;
  s.tokens += step.emitted;
  s.accepted += step.accepted;
  s.drafted += step.draft_size;
}

nlohmann::json DecodeMetrics::to_json() const {
  nlohmann::json j;
  j["steps"] = steps;
  j["tokens"] = tokens;
  j["mat"] = mat();
  static constexpr const char* kNames[] = {"dynamic_sam", "static_sam", "auxiliary",
                                           "plain"};
  for (std::size_t i = 0; i < per_source.size(); ++i) {
    const auto& s = per_source[i];
    j["sources"][kNames[i]] = {{"steps", s.steps},   {"tokens", s.tokens},
                               {"accepted", s.accepted}, {"drafted", s.drafted},
                               {"mat", s.mat()},     {"share", share(i)}};
  }
  return j;
}

DecodeSession::DecodeSession(DecodeConfig config, const SuffixAutomaton* static_sam)
    : config_(std::move(config)), static_sam_(static_sam), table_(config_.aux_k) {
  config_.validate();
  if (static_sam_ && (static_sam_->flavor() != Flavor::kStatic || !static_sam_->frozen())) {
    throw SamError("static automaton must be frozen before decoding");
  }
  if (config_.tree_size == 0) config_.tree_size = config_.draft_len;
}

void DecodeSession::advance(TokenId t) {
  if (static_sam_) static_cursor_ = static_sam_->transfer(static_cursor_, t);
  // Transfer, expand, then re-anchor the cursor.
  dyn_cursor_ = dynamic_.transfer(dyn_cursor_, t);
  dynamic_.expand(t);
  dyn_cursor_ = dynamic_.renormalize(dyn_cursor_);
  if (!context_.empty()) table_.observe_pair(context_.back(), t);
}

void DecodeSession::prefill(std::span<const TokenId> prompt) {
  for (TokenId t : prompt) {
    advance(t);
    context_.push_back(t);
  }
  prompt_len_ = context_.size();
}

std::span<const TokenId> DecodeSession::output() const {
  return std::span<const TokenId>(context_).subspan(prompt_len_);
}

StepOutcome DecodeSession::step(const Oracle& oracle) {
  StepOutcome out;
  if (finished()) {
    out.done = true;
    return out;
  }
  const std::size_t budget = config_.max_new_tokens - generated_;

  std::optional<Draft> dyn, stat, aux;
  if (!context_.empty()) {
    const TokenId last = context_.back();
    if (config_.use_dynamic) dyn = draft_linear(dynamic_, dyn_cursor_, config_.draft_len);
    if (config_.use_static && static_sam_) {
      stat = draft_tree(*static_sam_, static_cursor_, last, config_.tree_size);
    }
    if (config_.use_aux) aux = draft_bfs(table_, last, config_.aux_shape);
  }

  SelectionInput sel;
  sel.l_dynamic = dyn_cursor_.match_len;
  sel.l_static = static_cursor_.match_len;
  sel.has_dynamic = dyn.has_value();
  sel.has_static = stat.has_value();
  sel.has_aux = aux.has_value();
  sel.l_bias = config_.l_bias;
  sel.l_threshold = config_.l_threshold;
  out.source = select_draft(sel);

  const std::size_t before = context_.size();
  VerifyOutcome v;
  if (!out.source) {
    v = verify_linear(oracle, context_, {}, std::min<std::size_t>(budget, 1));
  } else {
    const Draft& chosen = *out.source == DraftSource::kDynamicSam ? *dyn
                          : *out.source == DraftSource::kStaticSam ? *stat
                                                                   : *aux;
    out.draft_size = chosen.size();
    v = chosen.is_linear() ? verify_linear(oracle, context_, chosen.tokens, budget)
                           : verify_tree(oracle, context_, chosen, budget);
  }
  out.accepted = v.accepted;
  out.emitted = v.emitted;

  // Roll back what verify appended and replay it through advance.
  std::vector<TokenId> emitted(context_.begin() + static_cast<std::ptrdiff_t>(before),
                               context_.end());
  context_.resize(before);
  for (TokenId t : emitted) {
    advance(t);
    context_.push_back(t);
  }
  generated_ += v.emitted;
  done_ = v.done;
  out.done = finished();
  metrics_.record(out);
  return out;
}

DecodeResult decode(std::span<const TokenId> prompt, const Oracle& oracle,
                    const DecodeConfig& config, const SuffixAutomaton* static_sam) {
  DecodeSession session(config, static_sam);
  session.prefill(prompt);
  while (!session.finished()) session.step(oracle);
  const auto out = session.output();
  return {std::vector<TokenId>(out.begin(), out.end()), session.metrics()};
}

std::vector<TokenId> decode_plain(std::span<const TokenId> prompt, const Oracle& oracle,
                                  std::size_t max_new_tokens) {
  std::vector<TokenId> context(prompt.begin(), prompt.end());
  while (context.size() - prompt.size() < max_new_tokens) {
    const auto tok = oracle.next(context);
    if (!tok) break;
    context.push_back(*tok);
  }
  return {context.begin() + static_cast<std::ptrdiff_t>(prompt.size()), context.end()};
}

}  // namespace samd
