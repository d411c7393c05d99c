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

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include <json.hpp>

#include "samd/sam.hpp"

namespace samd {

enum class VocabMode { kByte, kWord, kIds };

std::string_view to_string(VocabMode mode);
VocabMode parse_vocab_mode(std::string_view name);

inline constexpr TokenId kDefaultByteSeparator = 256;

// Token <-> surface mapping. Byte mode maps each byte to its value. Word mode
// assigns ids in first-seen order, skipping the separator id. Id mode parses
// whitespace-separated decimal ids.
class Vocabulary {
 public:
  static Vocabulary bytes(TokenId sep = kDefaultByteSeparator);
  static Vocabulary words(TokenId sep);
  static Vocabulary ids(TokenId sep);

  // Word mode grows the vocabulary unless frozen; a frozen vocabulary maps
  // unknown words to the OOV id if one is set and throws otherwise.
  std::vector<TokenId> tokenize(std::string_view text);
  std::string detokenize(std::span<const TokenId> tokens) const;

  void freeze() { frozen_ = true; }
  bool frozen() const { return frozen_; }
  void set_oov(std::optional<TokenId> id) { oov_ = id; }

  VocabMode mode() const { return mode_; }
  TokenId separator() const { return separator_; }
  // One past the largest id seen or reserved, separator included.
  std::uint32_t size() const;
  const std::vector<std::string>& words_list() const { return words_; }
  std::string hash() const;

  // Word list persistence: one word per line, line i holds the i-th word.
  void save_words(const std::filesystem::path& path) const;
  static Vocabulary load_words(const std::filesystem::path& path, TokenId sep);

 private:
  Vocabulary(VocabMode mode, TokenId sep) : mode_(mode), separator_(sep) {}
  TokenId word_id(const std::string& w);

  VocabMode mode_;
  TokenId separator_;
  bool frozen_ = false;
  std::optional<TokenId> oov_;
  std::uint32_t max_id_seen_ = 0;
  std::vector<std::string> words_;
  std::vector<TokenId> word_ids_;
  std::unordered_map<std::string, TokenId> index_;
};

std::vector<TokenId> parse_ids(std::string_view text);
std::string read_file(const std::filesystem::path& path);

struct IngestOptions {
  bool doc_per_line = false;
  std::size_t topk = kDefaultTopK;
};

struct Manifest {
  std::uint64_t docs = 0;
  std::uint64_t tokens = 0;
  VocabMode vocab_mode = VocabMode::kByte;
  std::string vocab_hash;
  std::size_t k = kDefaultTopK;
  std::uint32_t format_version = kFormatVersion;

  nlohmann::json to_json() const;
};

struct IngestResult {
  SuffixAutomaton sam{Flavor::kStatic};
  Manifest manifest;
};

std::vector<std::vector<TokenId>> read_documents(
    const std::vector<std::filesystem::path>& paths, Vocabulary& vocab, bool doc_per_line);

// Reads, tokenizes and concatenates documents (trailing separator after
// each), then builds and freezes a static automaton with top-k successors.
IngestResult ingest(const std::vector<std::filesystem::path>& paths, Vocabulary& vocab,
                    const IngestOptions& options = {});

}  // namespace samd
