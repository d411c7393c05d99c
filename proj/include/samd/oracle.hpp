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
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "samd/sam.hpp"

namespace samd {

// Deterministic stand-in for the target model: maps a context to its greedy
// next token, or nullopt for end of sequence.
class Oracle {
 public:
  virtual ~Oracle() = default;
  virtual std::optional<TokenId> next(std::span<const TokenId> context) const = 0;
};

// Emits a fixed target stream after a prompt of known length.
class ReplayOracle final : public Oracle {
 public:
  ReplayOracle(std::vector<TokenId> target, std::size_t prompt_len);
  std::optional<TokenId> next(std::span<const TokenId> context) const override;

 private:
  std::vector<TokenId> target_;
  std::size_t prompt_len_;
};

// Argmax next-token model over k-gram counts with back-off to shorter
// contexts. Ties go to the smallest token. Predicting eos ends the sequence.
class NgramOracle final : public Oracle {
 public:
  NgramOracle(std::size_t order, std::span<const TokenId> corpus,
              std::optional<TokenId> eos = std::nullopt);
  std::optional<TokenId> next(std::span<const TokenId> context) const override;
  std::size_t order() const { return order_; }

 private:
  std::size_t order_;
  std::optional<TokenId> eos_;
  // best_[j] maps a j-token context to its argmax successor.
  std::vector<std::map<std::vector<TokenId>, TokenId>> best_;
};

class FunctionOracle final : public Oracle {
 public:
  using Fn = std::function<std::optional<TokenId>(std::span<const TokenId>)>;
  explicit FunctionOracle(Fn fn) : fn_(std::move(fn)) {}
  std::optional<TokenId> next(std::span<const TokenId> context) const override {
    return fn_(context);
  }

 private:
  Fn fn_;
};

}  // namespace samd
