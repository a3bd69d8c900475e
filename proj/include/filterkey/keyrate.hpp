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
#include <optional>
#include <string>
#include <vector>

#include "filterkey/b92.hpp"

namespace filterkey {

/// How the accepted-rounds threshold n0 is chosen.
struct N0Policy {
  enum class Kind { expected, explicit_count, slack_sigma };
  Kind kind = Kind::expected;
  std::uint64_t count = 0;   // explicit_count
  double k_sigma = 0.0;      // slack_sigma: floor(p_a n - k sqrt(n p_a(1-p_a)))

  static N0Policy expected() { return {}; }
  static N0Policy explicit_count(std::uint64_t n0);
  static N0Policy slack(double k);
};

/// Full description of one finite-size run to analyze.
struct ProtocolSpec {
  std::uint64_t n_total = 0;          // total signals N
  double test_frac = 0.25;            // f, m = floor(f N), 0 < f < 1/2
  double eps = 1e-6;                  // target security level
  B92Params params;
  N0Policy n0_policy;
  std::optional<double> eps_cor;      // optional correctness budget

  void validate() const;
};

/// Everything the key-length computation decided, for reporting.  Serialized
/// field names match these member names.
struct KeyRateReport {
  std::uint64_t N = 0;
  std::uint64_t m = 0;
  std::uint64_t n = 0;
  std::uint64_t n0 = 0;
  double delta = 0.0;
  double eps_cl = 0.0;
  double gamma_bits = 0.0;
  double c_bits = 0.0;
  double lambda_ec = 0.0;
  double ell = 0.0;
  double rate = 0.0;
  double security_epsilon = 0.0;
  bool no_key = false;  // ell clamped to 0: nothing extractable
};

/// Generic key-length engine: minimizes c0*c_bits - gamma_bits(c0) over
/// c0 in [n0, n], then subtracts the error-correction leakage and the
/// amplification cost 2 log2(1/sqrt(eps_cl)).  Clamps at 0.
struct GenericKeyLength {
  double ell = 0.0;
  std::uint64_t c0_min = 0;  // minimizing c0
  bool clamped = false;
};
GenericKeyLength generic_key_length(
    double c_bits, const std::function<double(std::uint64_t)>& gamma_bits,
    std::uint64_t n0, std::uint64_t n, double lambda_ec, double eps_cl);

/// Finite-size key length for the extended two-state protocol: m = floor(fN),
/// delta from the target security level, n0 from the policy (default
/// floor(p_a n)), ambiguity term from the entropy bound at c0 = n0 (the
/// bound's key term grows with c0, so the minimum sits at n0; the generic
/// scan is kept for verification), leakage n0 h(min(q_z + delta, 1/2)).
KeyRateReport b92_key_length(const ProtocolSpec& spec);

/// Infinite-key limit (delta -> 0, vanishing test fraction):
///   p_a (1 - h(min(q/p_a, 1/2)) - h(q_z)), clamped at 0.
double asymptotic_rate(const B92Params& params);

/// Best finite-size rate over a fixed log-spaced grid of test fractions
/// (40 per decade from 1e-6 to 0.45).  A fixed grid keeps the maximum
/// pointwise monotone in N, which a per-N continuous optimizer would not
/// guarantee in the last digits.
KeyRateReport best_over_test_fraction(ProtocolSpec spec);

/// Cartesian sweep; every list must be nonempty.  x entries may be negative
/// sentinels resolved per theta via x_practical flags in the CLI layer; here
/// they are plain values.  Row order: theta, x, q, f, eps outermost to
/// innermost, then N (so each curve over N is contiguous).
struct SweepGrid {
  std::vector<double> theta, x, q, test_frac, eps;
  std::vector<std::uint64_t> n_total;
  bool append_asymptote = false;
};
struct SweepRow {
  KeyRateReport report;
  bool asymptote = false;           // pseudo-row: rate holds asymptotic_rate
  std::optional<std::string> error; // per-point failure, sweep continues
};
std::vector<SweepRow> sweep(const SweepGrid& grid);

}  // namespace filterkey
