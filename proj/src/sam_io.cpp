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

#include <algorithm>
#include <array>
#include <bit>
#include <cstring>
#include <fstream>
#include <iterator>

#include "samd/sam.hpp"

namespace samd {
namespace {

constexpr std::array<std::uint8_t, 4> kMagic = {'S', 'A', 'M', 'D'};

class Writer {
 public:
  void bytes(std::span<const std::uint8_t> b) { out_.insert(out_.end(), b.begin(), b.end()); }
  void u8(std::uint8_t v) { out_.push_back(v); }
  void u32(std::uint32_t v) {
    for (int i = 0; i < 4; ++i) out_.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
  }
  void u64(std::uint64_t v) {
    for (int i = 0; i < 8; ++i) out_.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
  }
  void f64(double v) { u64(std::bit_cast<std::uint64_t>(v)); }
  std::vector<std::uint8_t> take() { return std::move(out_); }

 private:
  std::vector<std::uint8_t> out_;
};

class Reader {
 public:
  explicit Reader(std::span<const std::uint8_t> in) : in_(in) {}

  std::span<const std::uint8_t> bytes(std::size_t n) {
    need(n);
    auto s = in_.subspan(pos_, n);
    pos_ += n;
    return s;
  }
  std::uint8_t u8() { return bytes(1)[0]; }
  std::uint32_t u32() {
    auto b = bytes(4);
    std::uint32_t v = 0;
    for (int i = 3; i >= 0; --i) v = (v << 8) | b[i];
    return v;
  }
  std::uint64_t u64() {
    auto b = bytes(8);
    std::uint64_t v = 0;
    for (int i = 7; i >= 0; --i) v = (v << 8) | b[i];
    return v;
  }
  double f64() { return std::bit_cast<double>(u64()); }
  std::size_t remaining() const { return in_.size() - pos_; }

 private:
  void need(std::size_t n) const {
    if (in_.size() - pos_ < n) throw FormatError("truncated automaton file");
  }

  std::span<const std::uint8_t> in_;
  std::size_t pos_ = 0;
};

}  // namespace

std::vector<std::uint8_t> save(const SuffixAutomaton& sam) {
  if (sam.flavor() != Flavor::kStatic || !sam.frozen()) {
    throw SamError("only frozen static automatons can be saved");
  }
  Writer w;
  w.bytes(kMagic);
  w.u32(kFormatVersion);
  w.u8(static_cast<std::uint8_t>(sam.flavor()));
  w.u32(sam.vocab_size());
  w.u32(sam.separator().value_or(kNoToken));
  w.u32(static_cast<std::uint32_t>(sam.topk_k()));
  w.u32(sam.max_length());
  w.u32(static_cast<std::uint32_t>(sam.size()));
  for (const auto& n : sam.nodes()) {
    w.u32(n.link);
    w.u32(n.length);
    w.u32(n.min_endpos);
    w.u64(n.freq);
    w.u32(static_cast<std::uint32_t>(n.next.size()));
    for (const auto& [tok, node] : n.next) {
      w.u32(tok);
      w.u32(node);
    }
    w.u32(static_cast<std::uint32_t>(n.topk.size()));
    for (const auto& s : n.topk) {
      w.u32(s.token);
      w.u32(s.node);
      w.f64(s.prob);
    }
  }
  for (TokenId t : sam.reference()) w.u32(t);
  return w.take();
}

SuffixAutomaton load(std::span<const std::uint8_t> bytes) {
  Reader r(bytes);
  auto magic = r.bytes(kMagic.size());
  if (!std::equal(magic.begin(), magic.end(), kMagic.begin())) {
    throw FormatError("bad magic: not an automaton file");
  }
  const std::uint32_t version = r.u32();
  if (version != kFormatVersion) {
    throw FormatError("unsupported format version " + std::to_string(version));
  }
  const std::uint8_t flavor = r.u8();
  if (flavor != static_cast<std::uint8_t>(Flavor::kStatic)) {
    throw FormatError("unsupported flavor byte " + std::to_string(flavor));
  }
  SuffixAutomaton sam(Flavor::kStatic);
  sam.vocab_size_ = r.u32();
  const TokenId sep = r.u32();
  if (sep != kNoToken) sam.separator_ = sep;
  sam.topk_k_ = r.u32();
  sam.max_length_ = r.u32();
  const std::uint32_t count = r.u32();
  if (count == 0) throw FormatError("automaton has no root node");
  // Smallest possible node record is 28 bytes.
  if (r.remaining() / 28 < count) throw FormatError("truncated automaton file");

  sam.nodes_.clear();
  sam.nodes_.resize(count);
  auto check_node = [count](NodeId id) {
    if (id >= count) throw FormatError("dangling node index " + std::to_string(id));
  };
  for (std::uint32_t i = 0; i < count; ++i) {
    SamNode& n = sam.nodes_[i];
    n.link = r.u32();
    if (i == 0) {
      if (n.link != kNoNode) throw FormatError("root node must not have a link");
    } else {
      check_node(n.link);
    }
    n.length = r.u32();
    n.min_endpos = r.u32();
    n.freq = r.u64();
    const std::uint32_t deg = r.u32();
    if (r.remaining() / 8 < deg) throw FormatError("truncated automaton file");
    n.next.resize(deg);
    for (auto& [tok, node] : n.next) {
      tok = r.u32();
      node = r.u32();
      check_node(node);
    }
    for (std::size_t e = 1; e < n.next.size(); ++e) {
      if (n.next[e - 1].first >= n.next[e].first) {
        throw FormatError("extension edges not strictly sorted");
      }
    }
    const std::uint32_t k = r.u32();
    if (r.remaining() / 16 < k) throw FormatError("truncated automaton file");
    n.topk.resize(k);
    for (auto& s : n.topk) {
      s.token = r.u32();
      s.node = r.u32();
      s.prob = r.f64();
      check_node(s.node);
    }
  }
  if (r.remaining() / 4 < sam.max_length_) throw FormatError("truncated automaton file");
  sam.reference_.resize(sam.max_length_);
  for (auto& t : sam.reference_) t = r.u32();
  if (r.remaining() != 0) throw FormatError("trailing bytes after automaton");

  sam.last_ = 0;
  for (std::uint32_t i = 0; i < count; ++i) {
    if (sam.nodes_[i].length == sam.max_length_) {
      sam.last_ = i;
      break;
    }
  }
  sam.frozen_ = true;
  return sam;
}

void save_file(const SuffixAutomaton& sam, const std::string& path) {
  const auto bytes = save(sam);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw SamError("cannot open " + path + " for writing");
  out.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
  if (!out) throw SamError("write failed for " + path);
}

SuffixAutomaton load_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw SamError("cannot open " + path);
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                  std::istreambuf_iterator<char>());
  return load(bytes);
}

}  // namespace samd
