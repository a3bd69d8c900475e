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

#include "filterkey/entropy.hpp"

#include <cmath>
#include <stdexcept>

namespace filterkey {

double binary_entropy(double x) {
  if (!(x >= 0.0 && x <= 1.0)) {
    throw std::domain_error("binary_entropy: argument outside [0,1]");
  }
  if (x == 0.0 || x == 1.0) return 0.0;
  return -x * std::log2(x) - (1.0 - x) * std::log2(1.0 - x);
}

double log2_binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) throw std::domain_error("log2_binomial: k > n");
  static const double kLn2 = std::log(2.0);
  return (std::lgamma(static_cast<double>(n) + 1.0) -
          std::lgamma(static_cast<double>(k) + 1.0) -
          std::lgamma(static_cast<double>(n - k) + 1.0)) /
         kLn2;
}

// Anchor at the largest term in the range, then walk outward accumulating
// term ratios C(n,k+-1)/C(n,k); terms fall off geometrically away from the
// mode, so the walk can stop once the remaining mass is below one ulp.
double log2_binomial_range_sum(std::uint64_t n, std::uint64_t k_lo,
                               std::uint64_t k_hi) {
  if (k_lo > k_hi) {
    throw std::invalid_argument("log2_binomial_range_sum: empty range");
  }
  if (k_hi > n) throw std::domain_error("log2_binomial_range_sum: k_hi > n");

  // Largest binomial inside [k_lo, k_hi]: the one closest to n/2.
  std::uint64_t peak = n / 2;
  if (peak < k_lo) peak = k_lo;
  if (peak > k_hi) peak = k_hi;

  const double log2_peak = log2_binomial(n, peak);
  double sum = 1.0;  // relative to the peak term

  double t = 1.0;
  for (std::uint64_t k = peak; k > k_lo; --k) {
    // C(n,k-1) = C(n,k) * k / (n-k+1)
    t *= static_cast<double>(k) / static_cast<double>(n - k + 1);
    sum += t;
    if (t < 1e-18 * sum) break;
  }
  t = 1.0;
  for (std::uint64_t k = peak; k < k_hi; ++k) {
    // C(n,k+1) = C(n,k) * (n-k) / (k+1)
    t *= static_cast<double>(n - k) / static_cast<double>(k + 1);
    sum += t;
    if (t < 1e-18 * sum) break;
  }
  return log2_peak + std::log2(sum);
}

double hamming_ball_log2(std::uint64_t n, std::uint64_t r) {
  if (r > n) throw std::domain_error("hamming_ball_log2: radius exceeds n");
  return log2_binomial_range_sum(n, 0, r);
}

double entropy_bound_log2(std::uint64_t n, std::uint64_t r) {
  if (r > n) throw std::domain_error("entropy_bound_log2: radius exceeds n");
  if (n == 0) return 0.0;
  const double x = static_cast<double>(r) / static_cast<double>(n);
  if (x > 0.5) return static_cast<double>(n);
  return static_cast<double>(n) * binary_entropy(x);
}

}  // namespace filterkey
