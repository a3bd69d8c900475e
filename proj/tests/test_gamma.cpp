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

namespace filterkey {
namespace {

TEST_CASE("gamma query validation") {
  CHECK_NOTHROW((GammaQuery{5, 3, 0.2, 0.1}.validate()));
  CHECK_THROWS_AS((GammaQuery{5, 0, 0.2, 0.1}.validate()),
                  std::invalid_argument);
  CHECK_THROWS_AS((GammaQuery{5, 6, 0.2, 0.1}.validate()),
                  std::invalid_argument);
  CHECK_THROWS_AS((GammaQuery{5, 3, -0.1, 0.1}.validate()),
                  std::invalid_argument);
  CHECK_THROWS_AS((GammaQuery{5, 3, 0.2, 0.0}.validate()),
                  std::invalid_argument);
}

TEST_CASE("statistic grid holds the multiples of 1/n plus the endpoint") {
  const std::vector<double> g = statistic_grid(5, 0.45);
  REQUIRE(g.size() == 4);
  CHECK(g[0] == 0.0);
  CHECK(g[1] == doctest::Approx(0.2));
  CHECK(g[2] == doctest::Approx(0.4));
  CHECK(g[3] == 0.45);
  // When s_max is itself a multiple of 1/n it is not duplicated.
  CHECK(statistic_grid(4, 0.5).size() == 3);
  CHECK(statistic_grid(10, 0.0).size() == 1);
}

TEST_CASE("exhaustive ambiguity exponent, pinned small cases") {
  // n = c0 = 2, s = 0, delta = 1/2: admissible kept words are those with at
  // most one disagreement, so the worst cell holds 3 of the 4 words.
  const auto g1 = gamma_exhaustive(GammaQuery{2, 2, 0.0, 0.5});
  REQUIRE(g1.has_value());
  CHECK(*g1 == doctest::Approx(std::log2(3.0)).epsilon(1e-13));

  // One discarded position, tight tolerance: only the exact match survives,
  // a single word, zero bits of ambiguity.
  const auto g2 = gamma_exhaustive(GammaQuery{3, 2, 0.0, 0.3});
  REQUIRE(g2.has_value());
  CHECK(*g2 == 0.0);

  // A tolerance covering the whole cube saturates at c0 bits.
  const auto g3 = gamma_exhaustive(GammaQuery{3, 3, 0.0, 1.0});
  REQUIRE(g3.has_value());
  CHECK(*g3 == 3.0);

  CHECK_THROWS_AS(gamma_exhaustive(GammaQuery{15, 10, 0.1, 0.1}),
                  std::invalid_argument);
}

TEST_CASE("weight-class evaluator agrees with brute force everywhere") {
  for (std::uint64_t n = 2; n <= 6; ++n) {
    for (std::uint64_t c0 = 1; c0 <= n; ++c0) {
      for (double s_max : {0.0, 0.15, 0.4}) {
        for (double delta : {0.08, 0.3}) {
          const GammaQuery q{n, c0, s_max, delta};
          const auto brute = gamma_exhaustive(q);
          const auto fast = gamma_hamming_exact(q);
          REQUIRE(brute.has_value() == fast.has_value());
          if (brute) CHECK(*fast == doctest::Approx(*brute).epsilon(1e-12));
        }
      }
    }
  }
}

TEST_CASE("weight-class evaluator reduces to a Hamming ball when c0 = n") {
  // No discard freedom and s_max below delta: the worst cell is the ball of
  // radius floor(n (s_max + delta)) around the reference word.
  const auto g = gamma_hamming_exact(GammaQuery{12, 12, 0.1, 0.2});
  REQUIRE(g.has_value());
  CHECK(*g == doctest::Approx(std::log2(299.0)).epsilon(1e-12));

  CHECK_THROWS_AS(gamma_hamming_exact(GammaQuery{4001, 100, 0.1, 0.1}),
                  std::invalid_argument);
}

TEST_CASE("entropy bound dominates the exact value") {
  for (std::uint64_t n : {50ULL, 200ULL}) {
    for (double frac : {0.75, 1.0}) {
      const std::uint64_t c0 =
          static_cast<std::uint64_t>(static_cast<double>(n) * frac);
      for (double q : {0.05, 0.1}) {
        for (double delta : {0.05, 0.1}) {
          const auto exact = gamma_hamming_exact(GammaQuery{n, c0, q, delta});
          REQUIRE(exact.has_value());
          CHECK(*exact <= gamma_entropy_bound(n, c0, q, delta) + 1e-9);
        }
      }
    }
  }
}

TEST_CASE("entropy bound caps at c0 once the ball reaches half the word") {
  CHECK(gamma_entropy_bound(100, 50, 0.3, 0.1) == 50.0);
  CHECK(gamma_entropy_bound(100, 100, 0.55, 0.1) == 100.0);
}

TEST_CASE("entropy bound is monotone in noise and tolerance") {
  double prev = -1.0;
  for (double q : {0.01, 0.05, 0.1, 0.2}) {
    const double cur = gamma_entropy_bound(1000, 900, q, 0.02);
    CHECK(cur >= prev);
    prev = cur;
  }
  prev = -1.0;
  for (double d : {0.01, 0.05, 0.1, 0.2}) {
    const double cur = gamma_entropy_bound(1000, 900, 0.02, d);
    CHECK(cur >= prev);
    prev = cur;
  }
}

}  // namespace
}  // namespace filterkey
