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

#include "filterkey/bitstring.hpp"

#include <bit>
#include <stdexcept>

namespace filterkey {

namespace {
constexpr std::size_t kWordBits = 64;

std::size_t word_count(std::size_t n) { return (n + kWordBits - 1) / kWordBits; }
}  // namespace

BitString::BitString(std::size_t n) : words_(word_count(n), 0), len_(n) {}

BitString BitString::from_string(const std::string& s) {
  BitString q(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '1') {
      q.set(i, true);
    } else if (s[i] != '0') {
      throw std::invalid_argument("bit string literal may contain only 0/1");
    }
  }
  return q;
}

bool BitString::get(std::size_t i) const {
  if (i >= len_) throw std::out_of_range("bit index out of range");
  return (words_[i / kWordBits] >> (i % kWordBits)) & 1u;
}

void BitString::set(std::size_t i, bool v) {
  if (i >= len_) throw std::out_of_range("bit index out of range");
  const std::uint64_t mask = std::uint64_t{1} << (i % kWordBits);
  if (v) {
    words_[i / kWordBits] |= mask;
  } else {
    words_[i / kWordBits] &= ~mask;
  }
}

void BitString::push_back(bool v) {
  if (len_ % kWordBits == 0) words_.push_back(0);
  ++len_;
  if (v) set(len_ - 1, true);
}

std::size_t BitString::count() const {
  std::size_t c = 0;
  for (std::uint64_t w : words_) c += static_cast<std::size_t>(std::popcount(w));
  return c;
}

std::string BitString::to_string() const {
  std::string s(len_, '0');
  for (std::size_t i = 0; i < len_; ++i) {
    if (get(i)) s[i] = '1';
  }
  return s;
}

BitString operator^(const BitString& a, const BitString& b) {
  if (a.size() != b.size()) {
    throw std::invalid_argument("xor of bit strings with different lengths");
  }
  // High bits of the last word stay zero because both inputs keep them zero.
  BitString out(a.size());
  for (std::size_t i = 0; i < out.words_.size(); ++i) {
    out.words_[i] = a.words_[i] ^ b.words_[i];
  }
  return out;
}

double relative_weight(const BitString& q) {
  if (q.empty()) {
    throw std::invalid_argument("relative weight of the empty string");
  }
  return static_cast<double>(q.count()) / static_cast<double>(q.size());
}

BitString take_at(const BitString& q, const std::vector<std::size_t>& t) {
  BitString out(t.size());
  for (std::size_t i = 0; i < t.size(); ++i) out.set(i, q.get(t[i]));
  return out;
}

BitString drop_at(const BitString& q, const std::vector<std::size_t>& t) {
  std::vector<bool> in_t(q.size(), false);
  for (std::size_t i : t) {
    if (i >= q.size()) throw std::out_of_range("subset index out of range");
    if (in_t[i]) throw std::invalid_argument("duplicate subset index");
    in_t[i] = true;
  }
  BitString out(q.size() - t.size());
  std::size_t j = 0;
  for (std::size_t i = 0; i < q.size(); ++i) {
    if (!in_t[i]) out.set(j++, q.get(i));
  }
  return out;
}

BitString merge_by_mask(const BitString& d, const BitString& q0,
                        const BitString& q1) {
  if (q0.size() != d.count_zeros() || q1.size() != d.count()) {
    throw std::invalid_argument(
        "merge_by_mask: part lengths must match the mask's zero/one counts");
  }
  BitString out(d.size());
  std::size_t i0 = 0, i1 = 0;
  for (std::size_t i = 0; i < d.size(); ++i) {
    out.set(i, d.get(i) ? q1.get(i1++) : q0.get(i0++));
  }
  return out;
}

std::pair<BitString, BitString> split_by_mask(const BitString& d,
                                              const BitString& q) {
  if (q.size() != d.size()) {
    throw std::invalid_argument("split_by_mask: mask and word lengths differ");
  }
  BitString q0(d.count_zeros()), q1(d.count());
  std::size_t i0 = 0, i1 = 0;
  for (std::size_t i = 0; i < d.size(); ++i) {
    if (d.get(i)) {
      q1.set(i1++, q.get(i));
    } else {
      q0.set(i0++, q.get(i));
    }
  }
  return {q0, q1};
}

}  // namespace filterkey
