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

#include <utility>

#include "filterkey/qubit.hpp"

namespace filterkey {

/// Parameters of the extended two-state protocol: signal angle theta, device
/// quality x (1 = ideal; cos^2(theta/2) = practical), and depolarizing noise
/// level q.  The two key states are |phi_j> = cos(theta/2)|+> +
/// (-1)^j sin(theta/2)|->, with overlap cos(theta).
struct B92Params {
  double theta = 0.0;  // (0, pi/2]
  double x = 1.0;      // (0, 1]
  double q = 0.0;      // [0, 1/2]

  void validate() const;

  // Half-angle quantities.  The squared forms use the half-angle identities
  // (1 +- cos theta)/2; at theta = pi/2 the plus branch absorbs the sub-ulp
  // angle error and alpha^2 is exactly 1/2 in doubles, which p() and the
  // conclusive-probability formula rely on.  (The minus branch keeps the
  // error, so beta^2 sits half an ulp below 1/2 there.)
  double alpha() const;   // cos(theta/2)
  double beta() const;    // sin(theta/2)
  double alpha2() const;  // cos^2(theta/2)
  double beta2() const;   // sin^2(theta/2)

  /// Detection strength p = x^2 / (2 cos^2(theta/2)).
  double p() const;
};

/// The two signal states; <phi_0|phi_1> = cos(theta).
std::pair<CVec2, CVec2> signal_states(double theta);

/// Bob's three-outcome measurement {M0, M1, M_inc}: M_j = p |phibar_{1-j}>
/// <phibar_{1-j}| detects phi_j unambiguously; M_inc = I - M0 - M1 is the
/// inconclusive rest.  Throws (naming the offending eigenvalue) when the
/// inconclusive operator would go negative, e.g. for x > 1.
struct B92Povm {
  Op2 m0, m1, inc;
};
B92Povm povm(double theta, double x);

/// The keep/discard filter pair: F0 = sqrt(M0 + M1), F1 = sqrt(M_inc).
/// F0^2 + F1^2 = I; both are diagonal in X and satisfy the filter alignment
/// hypothesis with M = Mtilde = X.
struct B92Filters {
  Op2 f0, f1;
};
B92Filters filter_ops(double theta, double x);

/// Closed form of F0, sqrt(2p) (sin(theta/2)|+><+| + cos(theta/2)|-><-|);
/// kept separate so tests can compare it against the operator square root.
Op2 f0_closed_form(double theta, double x);

/// Two-qubit source of the equivalent entanglement-based picture:
/// (1/sqrt2)(|0>_A|phi_0>_B + |1>_A|phi_1>_B), which Schmidt-decomposes in
/// X (x) X as cos(theta/2)|++> + sin(theta/2)|-->.
State4 source_state(double theta);

/// Depolarizing channel rho -> (1-2q) rho + 2q tr(rho) I/2 on one qubit.
/// At q = 1/2 the output is fully mixed; the map preserves trace for all q.
Op2 depolarize(const Op2& rho, double q);

/// Same channel applied to Bob's qubit only (the channel sits between the
/// source and Bob; Alice's qubit never leaves her lab).
State4 depolarize(const State4& rho, double q);

/// Probability that a key round is conclusive,
///   p_a = 4 p alpha^2 beta^2 (1-2q) + 2 p q,
/// evaluated in the regrouped form p*(g - 2q(g-1)) with g = sin^2 theta
/// (= 4 alpha^2 beta^2) so that theta = pi/2, x = 1 gives exactly 1.
/// Cross-checked internally against the Born-rule trace on the depolarized
/// source state (1e-12); a mismatch throws std::logic_error.
double acceptance_prob(const B92Params& params);

/// Error rate of the raw key conditioned on a conclusive outcome,
///   q_z = p q / p_a.
/// Throws std::domain_error when p_a = 0.
double key_error(const B92Params& params);

}  // namespace filterkey
