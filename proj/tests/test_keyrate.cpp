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
#include "filterkey/gamma.hpp"
#include "filterkey/keyrate.hpp"
#include "filterkey/sampling.hpp"

namespace filterkey {
namespace {

constexpr double kPi = 3.14159265358979323846;

ProtocolSpec base_spec() {
  ProtocolSpec spec;
  spec.n_total = 1000000;
  spec.test_frac = 0.25;
  spec.eps = 1e-6;
  spec.params = B92Params{kPi / 3.0, 1.0, 0.01};
  return spec;
}

TEST_CASE("protocol spec validation") {
  CHECK_NOTHROW(base_spec().validate());
  ProtocolSpec s = base_spec();
  s.n_total = 3;
  CHECK_THROWS_AS(s.validate(), std::invalid_argument);
  s = base_spec();
  s.test_frac = 0.5;
  CHECK_THROWS_AS(s.validate(), std::invalid_argument);
  s = base_spec();
  s.test_frac = 0.0;
  CHECK_THROWS_AS(s.validate(), std::invalid_argument);
  s = base_spec();
  s.eps = 1.0;
  CHECK_THROWS_AS(s.validate(), std::invalid_argument);
  s = base_spec();
  s.eps_cor = 1.5;
  CHECK_THROWS_AS(s.validate(), std::invalid_argument);
  s = base_spec();
  s.n0_policy = N0Policy::explicit_count(0);
  CHECK_THROWS_AS(s.validate(), std::invalid_argument);
  s = base_spec();
  s.n0_policy = N0Policy::slack(-1.0);
  CHECK_THROWS_AS(s.validate(), std::invalid_argument);
}

TEST_CASE("generic engine on a flat ambiguity profile") {
  const auto zero = [](std::uint64_t) { return 0.0; };
  const GenericKeyLength gk =
      generic_key_length(1.0, zero, 100, 200, 0.0, std::ldexp(1.0, -40));
  CHECK(gk.ell == doctest::Approx(60.0).epsilon(1e-12));
  CHECK(gk.c0_min == 100);
  CHECK_FALSE(gk.clamped);

  // A failure bound so generous the amplification cost eats everything.
  const GenericKeyLength clamped =
      generic_key_length(1.0, zero, 100, 200, 0.0, std::ldexp(1.0, -20) *
                                                       std::ldexp(1.0, -180));
  CHECK(clamped.ell == 0.0);
  CHECK(clamped.clamped);
}

TEST_CASE("generic engine scans for the adversarial c0") {
  // With gamma growing twice as fast as the key term, the worst case is the
  // largest c0.
  const auto steep = [](std::uint64_t c0) {
    return 2.0 * static_cast<double>(c0);
  };
  const GenericKeyLength gk =
      generic_key_length(1.0, steep, 100, 150, 0.0, 0.5);
  CHECK(gk.c0_min == 150);
  CHECK(gk.clamped);

  CHECK_THROWS_AS(generic_key_length(1.0, steep, 0, 150, 0.0, 0.5),
                  std::invalid_argument);
  CHECK_THROWS_AS(generic_key_length(1.0, steep, 100, 150, 0.0, 1.5),
                  std::invalid_argument);
  CHECK_THROWS_AS(generic_key_length(-1.0, steep, 100, 150, 0.0, 0.5),
                  std::invalid_argument);
}

TEST_CASE("finite-size report satisfies its arithmetic identities") {
  const KeyRateReport r = b92_key_length(base_spec());
  CHECK(r.N == 1000000);
  CHECK(r.m == 250000);
  CHECK(r.n == r.N - r.m);
  CHECK(r.c_bits == 1.0);
  CHECK(r.eps_cl ==
        doctest::Approx(sampling_failure_bound(r.m, r.n, r.delta))
            .epsilon(1e-12));
  CHECK(r.security_epsilon ==
        doctest::Approx(security_level(r.eps_cl)).epsilon(1e-12));
  CHECK(r.rate * static_cast<double>(r.N) ==
        doctest::Approx(r.ell).epsilon(1e-12));
  CHECK(r.delta ==
        doctest::Approx(delta_for_security(r.m, r.n, 1e-6)).epsilon(1e-14));
  CHECK_FALSE(r.no_key);
  CHECK(r.ell > 0.0);
}

TEST_CASE("a test fraction that reveals nothing is rejected") {
  ProtocolSpec s = base_spec();
  s.n_total = 10;
  s.test_frac = 0.05;  // floor(0.5) = 0 test rounds
  CHECK_THROWS_AS(b92_key_length(s), std::invalid_argument);
}

TEST_CASE("threshold policies") {
  ProtocolSpec s = base_spec();
  s.n_total = 10000;

  const KeyRateReport expected = b92_key_length(s);

  s.n0_policy = N0Policy::explicit_count(500);
  const KeyRateReport forced = b92_key_length(s);
  CHECK(forced.n0 == 500);

  s.n0_policy = N0Policy::explicit_count(8000);  // n = 7500 key rounds only
  CHECK_THROWS_AS(b92_key_length(s), std::invalid_argument);

  s.n0_policy = N0Policy::slack(0.0);
  CHECK(b92_key_length(s).n0 == expected.n0);

  s.n0_policy = N0Policy::slack(2.0);
  const KeyRateReport slack = b92_key_length(s);
  CHECK(slack.n0 < expected.n0);
  const double pa = acceptance_prob(s.params);
  const double nn = static_cast<double>(expected.n);
  const std::uint64_t want = static_cast<std::uint64_t>(
      std::floor(pa * nn - 2.0 * std::sqrt(nn * pa * (1.0 - pa))));
  CHECK(slack.n0 == want);
}

TEST_CASE("correctness budget shifts the length by its log") {
  ProtocolSpec s = base_spec();
  const KeyRateReport plain = b92_key_length(s);
  s.eps_cor = 0.01;
  const KeyRateReport cor = b92_key_length(s);
  CHECK(cor.ell - plain.ell ==
        doctest::Approx(std::log2(0.01)).epsilon(1e-9));
}

TEST_CASE("exact ambiguity count can only lengthen the key") {
  ProtocolSpec s;
  s.n_total = 5300;
  s.test_frac = 0.25;
  s.eps = 0.01;
  s.params = B92Params{kPi / 2.0, 1.0, 0.001};
  const KeyRateReport r = b92_key_length(s);
  REQUIRE_FALSE(r.no_key);

  const auto exact =
      gamma_hamming_exact(GammaQuery{r.n, r.n0, s.params.q, r.delta});
  REQUIRE(exact.has_value());
  CHECK(*exact <= r.gamma_bits + 1e-9);
  const double ell_exact = static_cast<double>(r.n0) * r.c_bits - *exact -
                           r.lambda_ec + std::log2(r.eps_cl);
  CHECK(ell_exact >= r.ell - 1e-9);
}

TEST_CASE("heavy noise yields a no-key report, not an error") {
  ProtocolSpec s = base_spec();
  s.params.q = 0.4;
  const KeyRateReport direct = b92_key_length(s);
  CHECK(direct.no_key);
  CHECK(direct.ell == 0.0);
  CHECK(direct.rate == 0.0);

  const KeyRateReport best = best_over_test_fraction(s);
  CHECK(best.no_key);
  CHECK(best.rate == 0.0);
}

TEST_CASE("best-over-fraction improves with block size, respects the limit") {
  ProtocolSpec s = base_spec();
  const double asym = asymptotic_rate(s.params);
  double prev = -1.0;
  for (std::uint64_t n : {10000ULL, 100000ULL, 1000000ULL, 10000000ULL}) {
    s.n_total = n;
    const KeyRateReport r = best_over_test_fraction(s);
    CHECK(r.rate >= prev - 1e-12);
    CHECK(r.rate <= asym + 1e-9);
    prev = r.rate;
  }
}

TEST_CASE("sweep row order, error capture and asymptote rows") {
  SweepGrid grid;
  grid.theta = {kPi / 3.0, kPi / 2.0};
  grid.x = {1.0};
  grid.q = {0.01};
  grid.test_frac = {0.25};
  grid.eps = {1e-6};
  grid.n_total = {10000, 100000, 1000000};
  const std::vector<SweepRow> rows = sweep(grid);
  REQUIRE(rows.size() == 6);
  for (int t = 0; t < 2; ++t) {
    for (int i = 0; i < 3; ++i) {
      const SweepRow& row = rows[3 * t + i];
      CHECK_FALSE(row.error.has_value());
      CHECK_FALSE(row.asymptote);
      CHECK(row.report.N == grid.n_total[i]);
    }
    // N curves are contiguous and the rate grows along them.
    CHECK(rows[3 * t + 2].report.rate >= rows[3 * t].report.rate);
  }

  grid.append_asymptote = true;
  const std::vector<SweepRow> with_asym = sweep(grid);
  REQUIRE(with_asym.size() == 8);
  CHECK(with_asym[3].asymptote);
  CHECK(with_asym[7].asymptote);
  CHECK(with_asym[3].report.rate ==
        doctest::Approx(asymptotic_rate(B92Params{kPi / 3.0, 1.0, 0.01}))
            .epsilon(1e-15));

  SweepGrid bad = grid;
  bad.test_frac = {0.1};
  bad.n_total = {4, 100000};
  bad.append_asymptote = false;
  const std::vector<SweepRow> mixed = sweep(bad);
  REQUIRE(mixed.size() == 4);
  CHECK(mixed[0].error.has_value());  // floor(0.1 * 4) = 0 test rounds
  CHECK(mixed[0].report.N == 4);
  CHECK_FALSE(mixed[1].error.has_value());

  SweepGrid empty = grid;
  empty.q = {};
  CHECK_THROWS_AS(sweep(empty), std::invalid_argument);
}

}  // namespace
}  // namespace filterkey
