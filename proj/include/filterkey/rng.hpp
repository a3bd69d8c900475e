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

#include <cstdint>
#include <vector>

namespace filterkey {

/// splitmix64 finalizer; a cheap, well-mixed 64-bit permutation.
inline std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Derive an independent stream key from a user seed and a counter (trial
/// index, round index, repetition index...).  Work seeded this way gives the
/// same results no matter how it is partitioned across workers.
inline std::uint64_t stream_key(std::uint64_t seed, std::uint64_t counter) {
  return mix64(seed ^ mix64(counter));
}

/// Small counter-based generator (splitmix64).  Fully specified here rather
/// than delegated to <random> distributions so that every build and every
/// thread count reproduces identical byte streams.
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t key) : state_(key) {}

  std::uint64_t next_u64() {
    return mix64(state_ += 0x9e3779b97f4a7c15ULL);
  }

  /// Uniform double in [0,1) with 53 random bits.
  double next_double() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  /// Uniform integer in [0, bound) by rejection on the top bits; bound >= 1.
  std::uint64_t next_below(std::uint64_t bound);

 private:
  std::uint64_t state_;
};

/// Uniformly random size-m subset of {0,...,n-1} via a partial Fisher-Yates
/// shuffle, returned in the (random) order the shuffle produced.
std::vector<std::size_t> random_subset(CounterRng& rng, std::size_t n,
                                       std::size_t m);

}  // namespace filterkey
