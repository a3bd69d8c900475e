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

#include "filterkey/b92.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace filterkey {

namespace {
const double kPi = std::acos(-1.0);
const double kSqrt1_2 = 1.0 / std::sqrt(2.0);

void check_theta(double theta) {
  if (!(theta > 0.0 && theta <= kPi / 2.0)) {
    throw std::invalid_argument("theta must lie in (0, pi/2]");
  }
}
}  // namespace

void B92Params::validate() const {
  check_theta(theta);
  if (!(x > 0.0 && x <= 1.0)) {
    throw std::invalid_argument("device quality x must lie in (0, 1]");
  }
  if (!(q >= 0.0 && q <= 0.5)) {
    throw std::invalid_argument("depolarizing level q must lie in [0, 1/2]");
  }
  // Positivity of the inconclusive operator, 2p max(sin^2, cos^2) <= 1,
  // follows from the ranges above; keep the guard for belt and braces.
  const double top = 2.0 * p() * std::max(alpha2(), beta2());
  if (top > 1.0 + 1e-12) {
    throw std::invalid_argument("parameters give an invalid measurement");
  }
}

double B92Params::alpha() const { return std::cos(theta / 2.0); }
double B92Params::beta() const { return std::sin(theta / 2.0); }
double B92Params::alpha2() const { return (1.0 + std::cos(theta)) / 2.0; }
double B92Params::beta2() const { return (1.0 - std::cos(theta)) / 2.0; }
double B92Params::p() const { return x * x / (2.0 * alpha2()); }

std::pair<CVec2, CVec2> signal_states(double theta) {
  check_theta(theta);
  const double a = std::cos(theta / 2.0);
  const double b = std::sin(theta / 2.0);
  // alpha|+> + (-1)^j beta|->, written in Z coordinates.
  const CVec2 phi0{(a + b) * kSqrt1_2, (a - b) * kSqrt1_2};
  const CVec2 phi1{(a - b) * kSqrt1_2, (a + b) * kSqrt1_2};
  return {phi0, phi1};
}

namespace {

// Orthogonal complements of the signal states, in Z coordinates:
// phibar_j = beta|+> + (-1)^(1-j) alpha|->.
std::pair<CVec2, CVec2> complement_states(double theta) {
  const double a = std::cos(theta / 2.0);
  const double b = std::sin(theta / 2.0);
  const CVec2 bar0{(b - a) * kSqrt1_2, (b + a) * kSqrt1_2};
  const CVec2 bar1{(b + a) * kSqrt1_2, (b - a) * kSqrt1_2};
  return {bar0, bar1};
}

}  // namespace

B92Povm povm(double theta, double x) {
  check_theta(theta);
  if (!(x > 0.0)) throw std::invalid_argument("device quality x must be > 0");
  B92Params pr{theta, x, 0.0};
  const double p = pr.p();
  auto [phi0, phi1] = signal_states(theta);
  auto [bar0, bar1] = complement_states(theta);

  // Unambiguous construction: outcome j fires only on phi_j.
  if (std::abs(inner(bar0, phi0)) > 1e-14 ||
      std::abs(inner(bar1, phi1)) > 1e-14) {
    throw std::logic_error("complement states failed orthogonality");
  }

  B92Povm out;
  out.m0 = cd(p, 0.0) * Op2::outer(bar1);
  out.m1 = cd(p, 0.0) * Op2::outer(bar0);
  out.inc = Op2::identity() - out.m0 - out.m1;

  const EigenSystem2 es = eigensolve_hermitian(out.inc);
  if (es.eval[0] < -kDerivedTol) {
    std::ostringstream msg;
    msg << "inconclusive operator has negative eigenvalue " << es.eval[0]
        << " (theta=" << theta << ", x=" << x << ")";
    throw std::domain_error(msg.str());
  }
  return out;
}

B92Filters filter_ops(double theta, double x) {
  const B92Povm pv = povm(theta, x);
  return {sqrt_psd(pv.m0 + pv.m1), sqrt_psd(pv.inc)};
}

Op2 f0_closed_form(double theta, double x) {
  check_theta(theta);
  B92Params pr{theta, x, 0.0};
  const double s = std::sqrt(2.0 * pr.p());
  const CVec2 plus{kSqrt1_2, kSqrt1_2};
  const CVec2 minus{kSqrt1_2, -kSqrt1_2};
  return cd(s * pr.beta(), 0.0) * Op2::outer(plus) +
         cd(s * pr.alpha(), 0.0) * Op2::outer(minus);
}

State4 source_state(double theta) {
  auto [phi0, phi1] = signal_states(theta);
  const std::array<cd, 4> psi{kSqrt1_2 * phi0.v[0], kSqrt1_2 * phi0.v[1],
                              kSqrt1_2 * phi1.v[0], kSqrt1_2 * phi1.v[1]};
  return State4::from_pure(psi);
}

namespace {
void check_q(double q) {
  if (!(q >= 0.0 && q <= 0.5)) {
    throw std::invalid_argument("depolarizing level q must lie in [0, 1/2]");
  }
}
}  // namespace

Op2 depolarize(const Op2& rho, double q) {
  check_q(q);
  return cd(1.0 - 2.0 * q, 0.0) * rho + (q * rho.trace()) * Op2::identity();
}

State4 depolarize(const State4& rho, double q) {
  check_q(q);
  return cd(1.0 - 2.0 * q, 0.0) * rho +
         cd(q, 0.0) * kron(partial_trace_B(rho), Op2::identity());
}

double acceptance_prob(const B92Params& params) {
  params.validate();
  // 4 p a^2 b^2 (1-2q) + 2 p q, regrouped as p (g - 2q(g-1)) with
  // g = 4 a^2 b^2 = sin^2 theta.  The sine form keeps g exactly 1 at
  // theta = pi/2 (the half-angle product picks up a rounding there), so the
  // ideal point yields p_a = 1 with no stray ulps.
  const double s = std::sin(params.theta);
  const double g = s * s;
  const double pa = params.p() * (g - 2.0 * params.q * (g - 1.0));

  const State4 noisy = depolarize(source_state(params.theta), params.q);
  const B92Povm pv = povm(params.theta, params.x);
  const double born =
      expect(noisy, Op2::identity(), pv.m0 + pv.m1).real();
  if (std::fabs(pa - born) > 1e-12) {
    std::ostringstream msg;
    msg << "acceptance probability formula " << pa
        << " disagrees with the measurement trace " << born;
    throw std::logic_error(msg.str());
  }
  return pa;
}

double key_error(const B92Params& params) {
  const double pa = acceptance_prob(params);
  if (pa <= 0.0) {
    throw std::domain_error("key_error: no conclusive rounds (p_a = 0)");
  }
  return params.p() * params.q / pa;
}

}  // namespace filterkey
