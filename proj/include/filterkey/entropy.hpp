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

namespace filterkey {

/// Binary entropy h(x) = -x log2 x - (1-x) log2(1-x) in bits, with the
/// continuity convention h(0) = h(1) = 0.  Throws outside [0,1].
double binary_entropy(double x);

/// log2 of the binomial coefficient C(n,k), via lgamma.
double log2_binomial(std::uint64_t n, std::uint64_t k);

/// log2 of sum_{k=k_lo..k_hi} C(n,k), computed in log space so that n up to
/// 10^7 is safe from overflow.  Empty range (k_lo > k_hi) is an error.
double log2_binomial_range_sum(std::uint64_t n, std::uint64_t k_lo,
                               std::uint64_t k_hi);

/// log2 of the Hamming-ball volume sum_{k=0..r} C(n,k).  Throws if r > n.
double hamming_ball_log2(std::uint64_t n, std::uint64_t r);

/// Entropy upper bound on the ball volume: n*h(r/n) for r <= n/2, else n
/// (the bound is only valid up to half radius; past it the whole cube caps).
double entropy_bound_log2(std::uint64_t n, std::uint64_t r);

}  // namespace filterkey
