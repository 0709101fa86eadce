// Copyright 2026 The p4aeq Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace p4aeq {

// An ordered sequence of bits. Index 0 is the first bit read off the wire;
// the textual form writes index 0 leftmost.
class BitVec {
 public:
  BitVec() = default;
  explicit BitVec(std::size_t width, bool value = false) : bits_(width, value) {}

  static BitVec from_string(std::string_view text) {
    BitVec out;
    out.bits_.reserve(text.size());
    for (char c : text) {
      if (c != '0' && c != '1') {
        throw std::invalid_argument("bit string contains '" + std::string(1, c) + "'");
      }
      out.bits_.push_back(c == '1');
    }
    return out;
  }

  // Low `width` bits of `value`, most significant first.
  static BitVec from_uint(std::uint64_t value, std::size_t width) {
    BitVec out(width);
    for (std::size_t i = 0; i < width; ++i) {
      out.bits_[i] = ((value >> (width - 1 - i)) & 1U) != 0;
    }
    return out;
  }

  std::size_t size() const { return bits_.size(); }
  bool empty() const { return bits_.empty(); }
  bool operator[](std::size_t i) const { return bits_[i]; }
  void set(std::size_t i, bool v) { bits_[i] = v; }
  void push_back(bool b) { bits_.push_back(b); }

  // Clamped, inclusive substring: starts at min(lo, |w|-1) and ends at
  // min(hi, |w|-1). Empty input or lo > hi after clamping yields the empty
  // vector.
  BitVec slice(std::size_t lo, std::size_t hi) const {
    if (bits_.empty()) return {};
    const std::size_t last = bits_.size() - 1;
    lo = std::min(lo, last);
    hi = std::min(hi, last);
    BitVec out;
    if (lo > hi) return out;
    out.bits_.assign(bits_.begin() + static_cast<std::ptrdiff_t>(lo),
                     bits_.begin() + static_cast<std::ptrdiff_t>(hi) + 1);
    return out;
  }

  BitVec concat(const BitVec& rhs) const {
    BitVec out = *this;
    out.bits_.insert(out.bits_.end(), rhs.bits_.begin(), rhs.bits_.end());
    return out;
  }

  // Bits [offset, offset + width) without clamping.
  BitVec take(std::size_t offset, std::size_t width) const {
    if (offset + width > bits_.size()) throw std::out_of_range("BitVec::take past end");
    BitVec out;
    out.bits_.assign(bits_.begin() + static_cast<std::ptrdiff_t>(offset),
                     bits_.begin() + static_cast<std::ptrdiff_t>(offset + width));
    return out;
  }

  std::uint64_t to_uint() const {
    std::uint64_t v = 0;
    for (bool b : bits_) v = (v << 1) | (b ? 1U : 0U);
    return v;
  }

  std::string to_string() const {
    std::string s;
    s.reserve(bits_.size());
    for (bool b : bits_) s.push_back(b ? '1' : '0');
    return s;
  }

  friend bool operator==(const BitVec&, const BitVec&) = default;
  friend std::strong_ordering operator<=>(const BitVec& a, const BitVec& b) {
    if (a.size() != b.size()) return a.size() <=> b.size();
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (a[i] != b[i]) return a[i] ? std::strong_ordering::greater : std::strong_ordering::less;
    }
    return std::strong_ordering::equal;
  }

  std::size_t hash() const { return std::hash<std::vector<bool>>{}(bits_); }

 private:
  std::vector<bool> bits_;
};

}  // namespace p4aeq

template <>
struct std::hash<p4aeq::BitVec> {
  std::size_t operator()(const p4aeq::BitVec& v) const noexcept { return v.hash(); }
};
