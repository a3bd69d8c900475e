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

#include <array>
#include <cstdint>
#include <vector>

#include "filterkey/b92.hpp"
#include "filterkey/bitstring.hpp"

namespace filterkey {

/// One simulated protocol run: N rounds, a random size-m test subset, the
/// noise tolerance delta, and the abort thresholds (observed test statistic
/// above q_max, or fewer than n0_min conclusive key rounds).
struct SimConfig {
  std::uint64_t rounds = 0;   // N
  std::uint64_t m = 0;        // test subset size, m < N/2
  B92Params params;
  double delta = 0.0;
  double q_max = 0.0;         // accepted-statistic interval [0, q_max]
  std::uint64_t n0_min = 0;
  std::uint64_t seed = 0;

  void validate() const;
};

/// Record of one run.  The discard word d covers all N rounds in round
/// order; test rounds carry d = 0 (they are consumed by sampling, not
/// discarded by the filter), so the zeros of d over key rounds count the
/// conclusive rounds.
struct Transcript {
  std::vector<std::size_t> t;   // test positions, increasing
  double s_observed = 0.0;      // test-round disagreement rate
  BitString d;                  // per-round discard flags
  bool aborted = false;
  BitString raw_key_A, raw_key_B;  // conclusive key rounds, in round order
  std::uint64_t accepted = 0;   // conclusive key rounds
  std::uint64_t errors = 0;     // raw-key disagreements
};

/// Exact Born-rule outcome distribution of a test round (both sides measure
/// X on the depolarized source state), in the order ++, +-, -+, --.
/// Probabilities below 1e-12 are zeroed and the table renormalized, so
/// structurally impossible branches are exactly impossible in the sampler.
std::array<double, 4> test_round_distribution(const B92Params& params);

/// Exact distribution of a key round: Alice measures Z (bit a), Bob applies
/// the three-outcome measurement (0, 1, inconclusive), realized as the
/// keep/discard filter followed by a Z measurement of the kept state.  Order:
/// (a=0,j=0), (0,1), (0,inc), (1,0), (1,1), (1,inc).  Same zeroing rule.
std::array<double, 6> key_round_distribution(const B92Params& params);

/// Run the protocol once.  Deterministic for a given seed, independent of
/// worker count: every round draws from its own counter-derived stream and
/// the transcript is assembled in round order.
Transcript run_protocol_trace(const SimConfig& cfg);

/// Aggregate statistics over `repetitions` runs (repetition r reseeds with
/// stream_key(cfg.seed, r)).  Standard errors are binomial.
struct SimStats {
  double p_a_hat = 0.0, p_a_sigma = 0.0;     // conclusive fraction, key rounds
  double q_z_hat = 0.0, q_z_sigma = 0.0;     // error rate given conclusive
  double x_err_hat = 0.0, x_err_sigma = 0.0; // test-round disagreement
  std::uint64_t key_rounds = 0, accepted = 0, test_rounds = 0;
};
SimStats estimate_statistics(const SimConfig& cfg, std::uint64_t repetitions);

}  // namespace filterkey
