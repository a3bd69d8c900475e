// Copyright 2026 The filterkey project
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace filterkey {

/// Fixed-length word of bits, packed 64 per machine word.  Carrier for
/// measurement records, discard flags and the substring algebra used by the
/// sampling and counting layers.
class BitString {
 public:
  BitString() = default;
  /// All-zero word of length n.
  explicit BitString(std::size_t n);
  /// Parse from a text form such as "01101"; throws on non-binary characters.
  static BitString from_string(const std::string& s);

  std::size_t size() const { return len_; }
  bool empty() const { return len_ == 0; }

  bool get(std::size_t i) const;
  void set(std::size_t i, bool v);
  /// Append one bit (amortized O(1)); used when assembling raw keys.
  void push_back(bool v);

  /// Number of set bits (population count over the packed words).
  std::size_t count() const;
  std::size_t count_zeros() const { return len_ - count(); }

  /// Raw packed words, low bit of word 0 = position 0.  Unused high bits are
  /// kept zero as a class invariant.
  const std::vector<std::uint64_t>& words() const { return words_; }

  std::string to_string() const;

  bool operator==(const BitString& o) const {
    return len_ == o.len_ && words_ == o.words_;
  }
  bool operator!=(const BitString& o) const { return !(*this == o); }

 private:
  friend BitString operator^(const BitString& a, const BitString& b);

  std::vector<std::uint64_t> words_;
  std::size_t len_ = 0;
};

/// Bitwise exclusive-or; both operands must have equal length.
BitString operator^(const BitString& a, const BitString& b);

/// Fraction of set bits, #1(q)/len.  Throws on the empty string, whose
/// relative weight is undefined.
double relative_weight(const BitString& q);

/// Bits of q at the (sorted or unsorted, duplicate-free) index set t, in the
/// order the indices are listed.
BitString take_at(const BitString& q, const std::vector<std::size_t>& t);

/// Bits of q at positions not in t, in increasing position order.  t must be
/// duplicate-free.
BitString drop_at(const BitString& q, const std::vector<std::size_t>& t);

/// Interleave q0 and q1 under the mask d: output has d.size() bits, with the
/// bits of q0 placed in order at positions where d is 0 and the bits of q1 at
/// positions where d is 1.  Requires q0.size() == #0(d), q1.size() == #1(d).
BitString merge_by_mask(const BitString& d, const BitString& q0,
                        const BitString& q1);

/// Inverse of merge_by_mask: split q into (bits where d=0, bits where d=1).
std::pair<BitString, BitString> split_by_mask(const BitString& d,
                                              const BitString& q);

}  // namespace filterkey
