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

#include "samd/corpus.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <iterator>
#include <sstream>

#include <fmt/format.h>
#include <spdlog/spdlog.h>

namespace samd {
namespace {

bool is_space(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\v' || c == '\f';
}

template <typename Fn>
void for_each_field(std::string_view text, Fn&& fn) {
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && is_space(text[i])) ++i;
    std::size_t j = i;
    while (j < text.size() && !is_space(text[j])) ++j;
    if (j > i) fn(text.substr(i, j - i));
    i = j;
  }
}

std::uint64_t fnv1a(std::uint64_t h, std::string_view s) {
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

}  // namespace

std::string_view to_string(VocabMode mode) {
  switch (mode) {
    case VocabMode::kByte:
      return "byte";
    case VocabMode::kWord:
      return "word";
    case VocabMode::kIds:
      return "ids";
  }
  return "unknown";
}

VocabMode parse_vocab_mode(std::string_view name) {
  if (name == "byte") return VocabMode::kByte;
  if (name == "word") return VocabMode::kWord;
  if (name == "ids") return VocabMode::kIds;
  throw SamError(fmt::format("unknown vocabulary mode '{}'", name));
}

Vocabulary Vocabulary::bytes(TokenId sep) { return Vocabulary(VocabMode::kByte, sep); }
Vocabulary Vocabulary::words(TokenId sep) { return Vocabulary(VocabMode::kWord, sep); }
Vocabulary Vocabulary::ids(TokenId sep) { return Vocabulary(VocabMode::kIds, sep); }

std::uint32_t Vocabulary::size() const {
  std::uint32_t n = separator_ + 1;
  switch (mode_) {
    case VocabMode::kByte:
      n = std::max<std::uint32_t>(n, 256);
      break;
    case VocabMode::kWord:
      n = std::max<std::uint32_t>(n, static_cast<std::uint32_t>(words_.size()));
      break;
    case VocabMode::kIds:
      n = std::max<std::uint32_t>(n, max_id_seen_ + 1);
      break;
  }
  return n;
}

TokenId Vocabulary::word_id(const std::string& w) {
  if (auto it = index_.find(w); it != index_.end()) return it->second;
  if (frozen_) {
    if (oov_) return *oov_;
    throw SamError(fmt::format("unknown word '{}' in frozen vocabulary", w));
  }
  if (words_.size() == separator_) words_.emplace_back();  // reserved slot
  const auto id = static_cast<TokenId>(words_.size());
  words_.push_back(w);
  index_.emplace(w, id);
  return id;
}

std::vector<TokenId> Vocabulary::tokenize(std::string_view text) {
  std::vector<TokenId> out;
  switch (mode_) {
    case VocabMode::kByte:
      out.reserve(text.size());
      for (unsigned char c : text) out.push_back(c);
      break;
    case VocabMode::kWord:
      for_each_field(text, [&](std::string_view w) { out.push_back(word_id(std::string(w))); });
      break;
    case VocabMode::kIds:
      out = parse_ids(text);
      for (TokenId t : out) max_id_seen_ = std::max(max_id_seen_, t);
      break;
  }
  return out;
}

std::string Vocabulary::detokenize(std::span<const TokenId> tokens) const {
  std::string out;
  switch (mode_) {
    case VocabMode::kByte:
      for (TokenId t : tokens) {
        if (t == separator_) {
          out.push_back('\n');
        } else if (t < 256) {
          out.push_back(static_cast<char>(t));
        } else {
          throw SamError(fmt::format("token {} is not a byte", t));
        }
      }
      break;
    case VocabMode::kWord:
      for (std::size_t i = 0; i < tokens.size(); ++i) {
        const TokenId t = tokens[i];
        if (t == separator_) {
          out.push_back('\n');
          continue;
        }
        if (t >= words_.size()) throw SamError(fmt::format("token {} not in vocabulary", t));
        if (i > 0 && tokens[i - 1] != separator_) out.push_back(' ');
        out += words_[t];
      }
      break;
    case VocabMode::kIds:
      for (TokenId t : tokens) {
        out += std::to_string(t);
        out.push_back('\n');
      }
      break;
  }
  return out;
}

std::string Vocabulary::hash() const {
  std::uint64_t h = 14695981039346656037ull;
  h = fnv1a(h, to_string(mode_));
  h = fnv1a(h, std::to_string(separator_));
  for (const auto& w : words_) {
    h = fnv1a(h, w);
    h = fnv1a(h, std::string_view("\0", 1));
  }
  return fmt::format("{:016x}", h);
}

void Vocabulary::save_words(const std::filesystem::path& path) const {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw SamError("cannot open " + path.string() + " for writing");
  for (const auto& w : words_) out << w << '\n';
}

Vocabulary Vocabulary::load_words(const std::filesystem::path& path, TokenId sep) {
  Vocabulary v = words(sep);
  std::istringstream in(read_file(path));
  std::string line;
  while (std::getline(in, line)) {
    const auto id = static_cast<TokenId>(v.words_.size());
    if (id == sep) {
      if (!line.empty()) throw SamError("separator slot in word list is not empty");
      v.words_.emplace_back();
      continue;
    }
    if (line.empty() || !v.index_.emplace(line, id).second) {
      throw SamError(fmt::format("bad word list entry on line {}", id + 1));
    }
    v.words_.push_back(line);
  }
  v.freeze();
  return v;
}

std::vector<TokenId> parse_ids(std::string_view text) {
  std::vector<TokenId> out;
  for_each_field(text, [&](std::string_view f) {
    TokenId v = 0;
    auto [ptr, ec] = std::from_chars(f.data(), f.data() + f.size(), v);
    if (ec != std::errc() || ptr != f.data() + f.size()) {
      throw SamError(fmt::format("bad token id '{}'", f));
    }
    out.push_back(v);
  });
  return out;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw SamError("cannot open " + path.string());
  return std::string((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
}

nlohmann::json Manifest::to_json() const {
  return {{"docs", docs},
          {"tokens", tokens},
          {"vocab_mode", std::string(to_string(vocab_mode))},
          {"vocab_hash", vocab_hash},
          {"k", k},
          {"format_version", format_version}};
}

std::vector<std::vector<TokenId>> read_documents(
    const std::vector<std::filesystem::path>& paths, Vocabulary& vocab, bool doc_per_line) {
  std::vector<std::vector<TokenId>> docs;
  for (const auto& p : paths) {
    const std::string text = read_file(p);
    if (!doc_per_line) {
      docs.push_back(vocab.tokenize(text));
      continue;
    }
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (line.empty()) continue;
      docs.push_back(vocab.tokenize(line));
    }
  }
  return docs;
}

IngestResult ingest(const std::vector<std::filesystem::path>& paths, Vocabulary& vocab,
                    const IngestOptions& options) {
  if (paths.empty()) spdlog::warn("ingest: no input files, automaton will be empty");
  auto docs = read_documents(paths, vocab, options.doc_per_line);

  IngestResult r;
  r.sam = build_corpus(docs, vocab.separator());
  r.sam.set_vocab_size(vocab.size());
  r.sam.init_topk(options.topk);

  r.manifest.docs = docs.size();
  r.manifest.tokens = r.sam.max_length();
  r.manifest.vocab_mode = vocab.mode();
  r.manifest.vocab_hash = vocab.hash();
  r.manifest.k = options.topk;
  spdlog::debug("ingest: {} docs, {} tokens, {} states", r.manifest.docs,
                r.manifest.tokens, r.sam.size());
  return r;
}

}  // namespace samd
