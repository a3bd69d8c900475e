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
#include <functional>
#include <vector>

#include "filterkey/bitstring.hpp"

namespace filterkey {

/// A random-subset estimation strategy: a size-m test subset of N positions
/// is revealed and the observed statistic must predict the unobserved rest.
struct SamplingSpec {
  std::uint64_t n_total = 0;  // N
  std::uint64_t m = 0;        // revealed subset size, 1 <= m < N/2
  double delta = 0.0;         // tolerance on |observed - hidden|

  /// Throws std::invalid_argument when a field is out of range.
  void validate() const;
};

/// The statistic both sides evaluate: relative Hamming weight of the XOR of
/// the two records (their disagreement rate).
double xor_weight(const BitString& u, const BitString& v);

/// Strategy functor type: maps a pair of equal-length records to the scalar
/// being estimated.  The default everywhere is xor_weight.
using PairStatistic = std::function<double(const BitString&, const BitString&)>;

/// True when the statistic over the test positions t is within delta of the
/// statistic over the remaining positions.  t must be a nonempty proper
/// subset of the positions; both records must have equal length.
bool is_good_word(const BitString& qA, const BitString& qB,
                  const std::vector<std::size_t>& t, double delta,
                  const PairStatistic& stat = xor_weight);

/// Analytic bound on the sampling failure probability,
///   2 * exp(-delta^2 * m * (n+m) / (m+n+2)),
/// clamped to at most 1.  m is the revealed size, n the hidden size.
double sampling_failure_bound(std::uint64_t m, std::uint64_t n, double delta);

/// Tolerance achieving a target security level eps:
///   delta = sqrt((m+n+2)/(m(m+n)) * ln(50/eps^2)),
/// the algebraic inverse of 5*sqrt(sampling_failure_bound) = eps.
double delta_for_security(std::uint64_t m, std::uint64_t n, double eps);

/// Security level distilled from a failure bound: 5*sqrt(eps_cl), capped at 1.
double security_level(double eps_cl);

/// Monte Carlo / exhaustive estimate of a failure probability.
struct FailureEstimate {
  double p = 0.0;          // fails / trials
  double std_err = 0.0;    // binomial standard error (0 for exhaustive)
  std::uint64_t fails = 0;
  std::uint64_t trials = 0;
};

/// Monte Carlo estimate of the probability, over uniform size-m subsets t,
/// that (qA,qB) fails the good-word test.  Deterministic for a given seed and
/// independent of the worker count.  Requires 1 <= m < N.
FailureEstimate estimate_failure(const BitString& qA, const BitString& qB,
                                 std::uint64_t m, double delta,
                                 std::uint64_t trials, std::uint64_t seed);

/// Reference implementation of estimate_failure: a plain serial loop over the
/// same per-trial random streams, using the BitString substring path.  Must
/// produce bit-identical counts; kept for equivalence testing.
FailureEstimate estimate_failure_serial(const BitString& qA,
                                        const BitString& qB, std::uint64_t m,
                                        double delta, std::uint64_t trials,
                                        std::uint64_t seed);

/// Exact failure probability by enumerating every size-m subset.  Only
/// feasible for N <= 20; throws beyond that.
FailureEstimate exhaustive_failure(const BitString& qA, const BitString& qB,
                                   std::uint64_t m, double delta);

}  // namespace filterkey
