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

#include <cmath>
#include <stdexcept>

#include "doctest.h"
#include "filterkey/b92.hpp"
#include "filterkey/keyrate.hpp"
#include "filterkey/rng.hpp"

namespace filterkey {
namespace {

constexpr double kPi = 3.14159265358979323846;

TEST_CASE("parameter validation") {
  CHECK_NOTHROW((B92Params{kPi / 2.0, 1.0, 0.5}.validate()));
  CHECK_NOTHROW((B92Params{0.2, 0.3, 0.0}.validate()));
  CHECK_THROWS_AS((B92Params{0.0, 1.0, 0.0}.validate()),
                  std::invalid_argument);
  CHECK_THROWS_AS((B92Params{1.8, 1.0, 0.0}.validate()),
                  std::invalid_argument);
  CHECK_THROWS_AS((B92Params{1.0, 0.0, 0.0}.validate()),
                  std::invalid_argument);
  CHECK_THROWS_AS((B92Params{1.0, 1.2, 0.0}.validate()),
                  std::invalid_argument);
  CHECK_THROWS_AS((B92Params{1.0, 1.0, 0.6}.validate()),
                  std::invalid_argument);
}

TEST_CASE("half-angle forms are exact at the symmetric point") {
  const B92Params p{kPi / 2.0, 1.0, 0.1};
  // (1 + cos theta)/2 absorbs the sub-ulp angle error, so the detection
  // strength is exactly 1; (1 - cos theta)/2 keeps it and lands half an ulp
  // under 1/2, which is why nothing downstream may multiply by beta2 when
  // exactness at this point matters.
  CHECK(p.alpha2() == 0.5);  // exact, not approximate
  CHECK(p.beta2() == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(p.beta2() <= 0.5);
  CHECK(p.p() == 1.0);
  // g = sin^2(theta) is exactly 1 here, so conclusive probability is exact
  // regardless of the noise level.
  CHECK(acceptance_prob(p) == 1.0);
  CHECK(acceptance_prob(B92Params{kPi / 2.0, 1.0, 0.0}) == 1.0);
}

TEST_CASE("half-angle squares match their defining squares elsewhere") {
  for (double theta : {0.2, 0.7, 1.2, kPi / 2.0}) {
    const B92Params p{theta, 0.8, 0.0};
    CHECK(p.alpha2() ==
          doctest::Approx(p.alpha() * p.alpha()).epsilon(1e-14));
    CHECK(p.beta2() == doctest::Approx(p.beta() * p.beta()).epsilon(1e-14));
    CHECK(p.alpha2() + p.beta2() == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(p.p() ==
          doctest::Approx(0.8 * 0.8 / (2.0 * p.alpha2())).epsilon(1e-14));
  }
}

TEST_CASE("signal states overlap by cos theta") {
  for (double theta : {0.3, 1.0, kPi / 2.0}) {
    const auto [s0, s1] = signal_states(theta);
    CHECK(s0.norm() == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(s1.norm() == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(inner(s0, s1).real() ==
          doctest::Approx(std::cos(theta)).epsilon(1e-13));
    CHECK(std::fabs(inner(s0, s1).imag()) <= 1e-14);
  }
}

TEST_CASE("measurement is unambiguous and completes to identity") {
  for (double theta : {0.4, 1.0, kPi / 2.0}) {
    for (double x : {0.6, 1.0}) {
      const B92Povm pv = povm(theta, x);
      const auto [s0, s1] = signal_states(theta);
      // Wrong-state outcomes are strictly impossible.
      CHECK(std::abs(inner(s1, pv.m0.apply(s1))) <= 1e-13);
      CHECK(std::abs(inner(s0, pv.m1.apply(s0))) <= 1e-13);
      // Completeness.
      CHECK(frobenius_norm(pv.m0 + pv.m1 + pv.inc - Op2::identity()) <=
            1e-12);
      // Symmetric success probabilities.
      CHECK(inner(s0, pv.m0.apply(s0)).real() ==
            doctest::Approx(inner(s1, pv.m1.apply(s1)).real())
                .epsilon(1e-12));
      // All three elements are PSD.
      for (const Op2* op : {&pv.m0, &pv.m1, &pv.inc}) {
        const EigenSystem2 es = eigensolve_hermitian(*op);
        CHECK(es.eval[0] >= -1e-10);
      }
    }
  }
  CHECK_THROWS_AS(povm(1.0, 1.3), std::domain_error);
}

TEST_CASE("filters square to the measurement and complete to identity") {
  for (double theta : {0.4, 1.0, kPi / 2.0}) {
    for (double x : {0.6, 1.0}) {
      const B92Povm pv = povm(theta, x);
      const B92Filters f = filter_ops(theta, x);
      CHECK(frobenius_norm(f.f0 * f.f0 - (pv.m0 + pv.m1)) <= 1e-11);
      CHECK(frobenius_norm(f.f1 * f.f1 - pv.inc) <= 1e-11);
      CHECK(frobenius_norm(f.f0 * f.f0 + f.f1 * f.f1 - Op2::identity()) <=
            1e-11);
      CHECK(frobenius_norm(f.f0 - f0_closed_form(theta, x)) <= 1e-11);

      // Filtering then measuring the key basis is the original measurement:
      // F0 |z_a><z_a| F0 = M_a.
      const Op2 k0 = f.f0 * Op2::outer(Basis2::Z().e[0]) * f.f0;
      const Op2 k1 = f.f0 * Op2::outer(Basis2::Z().e[1]) * f.f0;
      CHECK(frobenius_norm(k0 - pv.m0) <= 1e-11);
      CHECK(frobenius_norm(k1 - pv.m1) <= 1e-11);
    }
  }
}

TEST_CASE("keep filter aligns X with X; pinned scales at theta = pi/3") {
  const B92Filters f = filter_ops(kPi / 3.0, 1.0);
  const FilterScalars sc =
      check_filter_relation(f.f0, Basis2::X(), Basis2::X(), 1e-10);
  // lambda(0|+) = tan(theta/2), lambda(0|-) = x.
  CHECK(std::abs(sc.lambda[0]) ==
        doctest::Approx(0.5773502691896258).epsilon(1e-12));
  CHECK(std::abs(sc.lambda[1]) == doctest::Approx(1.0).epsilon(1e-12));

  for (double x : {0.55, 0.9}) {
    const FilterScalars s2 = check_filter_relation(
        filter_ops(1.1, x).f0, Basis2::X(), Basis2::X(), 1e-10);
    CHECK(std::norm(s2.lambda[1]) == doctest::Approx(x * x).epsilon(1e-11));
  }
}

TEST_CASE("source state is pure with the advertised marginal") {
  for (double theta : {0.5, kPi / 3.0, kPi / 2.0}) {
    const State4 rho = source_state(theta);
    CHECK_NOTHROW(rho.validate_density());
    const auto ev = eigenvalues_hermitian4(rho);
    CHECK(ev[3] == doctest::Approx(1.0).epsilon(1e-10));  // pure

    const B92Params p{theta, 1.0, 0.0};
    const Op2 want = p.alpha2() * Op2::outer(Basis2::X().e[0]) +
                     cd{p.beta2(), 0.0} * Op2::outer(Basis2::X().e[1]);
    CHECK(frobenius_norm(partial_trace_B(rho) - want) <= 1e-12);
    CHECK(frobenius_norm(partial_trace_A(rho) - want) <= 1e-12);
  }
}

TEST_CASE("depolarizing channel endpoints and trace preservation") {
  CounterRng rng(stream_key(55, 0));
  Op2 rho;
  rho.m[0][0] = 0.7;
  rho.m[1][1] = 0.3;
  rho.m[0][1] = cd{0.1, 0.2};
  rho.m[1][0] = cd{0.1, -0.2};

  CHECK(frobenius_norm(depolarize(rho, 0.0) - rho) == 0.0);
  CHECK(frobenius_norm(depolarize(rho, 0.5) - 0.5 * Op2::identity()) <=
        1e-14);
  for (double q : {0.1, 0.3, 0.5}) {
    CHECK(depolarize(rho, q).trace().real() ==
          doctest::Approx(1.0).epsilon(1e-14));
  }
  CHECK_THROWS_AS(depolarize(rho, 0.7), std::invalid_argument);
}

TEST_CASE("two-qubit channel acts on B only") {
  const State4 rho = source_state(1.0);
  for (double q : {0.05, 0.25}) {
    const State4 out = depolarize(rho, q);
    CHECK(std::abs(out.trace() - cd{1.0, 0.0}) <= 1e-13);
    // Alice's marginal is untouched.
    CHECK(frobenius_norm(partial_trace_B(out) - partial_trace_B(rho)) <=
          1e-12);
    // Bob's marginal transforms exactly like the one-qubit channel.
    CHECK(frobenius_norm(partial_trace_A(out) -
                         depolarize(partial_trace_A(rho), q)) <= 1e-12);
  }
}

TEST_CASE("conclusive probability and key error: pinned values") {
  const B92Params p{kPi / 3.0, 1.0, 0.02};
  CHECK(acceptance_prob(p) ==
        doctest::Approx(0.5066666666666667).epsilon(1e-12));
  CHECK(key_error(p) ==
        doctest::Approx(0.026315789473684210).epsilon(1e-12));

  // Noiseless key bits are error-free; maximal noise loses half of them.
  CHECK(key_error(B92Params{1.0, 0.8, 0.0}) == 0.0);
  CHECK(key_error(B92Params{1.0, 0.8, 0.5}) ==
        doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("asymptotic rate limits") {
  CHECK(asymptotic_rate(B92Params{kPi / 3.0, 1.0, 0.0}) ==
        doctest::Approx(0.5).epsilon(1e-14));
  CHECK(asymptotic_rate(B92Params{kPi / 2.0, 1.0, 0.01}) ==
        doctest::Approx(0.8384137282081777).epsilon(1e-12));
  // Heavy noise kills the asymptotic rate entirely.
  CHECK(asymptotic_rate(B92Params{kPi / 2.0, 1.0, 0.45}) == 0.0);
}

}  // namespace
}  // namespace filterkey
