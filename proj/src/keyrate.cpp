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

#include "filterkey/keyrate.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "filterkey/entropy.hpp"
#include "filterkey/gamma.hpp"
#include "filterkey/sampling.hpp"

namespace filterkey {

N0Policy N0Policy::explicit_count(std::uint64_t n0) {
  N0Policy p;
  p.kind = Kind::explicit_count;
  p.count = n0;
  return p;
}

N0Policy N0Policy::slack(double k) {
  N0Policy p;
  p.kind = Kind::slack_sigma;
  p.k_sigma = k;
  return p;
}

void ProtocolSpec::validate() const {
  params.validate();
  if (n_total < 4) throw std::invalid_argument("n_total must be at least 4");
  if (!(test_frac > 0.0 && test_frac < 0.5)) {
    throw std::invalid_argument("test fraction must lie in (0, 1/2)");
  }
  if (!(eps > 0.0 && eps < 1.0)) {
    throw std::invalid_argument("security level eps must lie in (0, 1)");
  }
  if (eps_cor && !(*eps_cor > 0.0 && *eps_cor < 1.0)) {
    throw std::invalid_argument("eps_cor must lie in (0, 1)");
  }
  if (n0_policy.kind == N0Policy::Kind::explicit_count && n0_policy.count == 0) {
    throw std::invalid_argument("explicit n0 must be at least 1");
  }
  if (n0_policy.kind == N0Policy::Kind::slack_sigma && !(n0_policy.k_sigma >= 0.0)) {
    throw std::invalid_argument("slack sigma multiplier must be >= 0");
  }
}

GenericKeyLength generic_key_length(
    double c_bits, const std::function<double(std::uint64_t)>& gamma_bits,
    std::uint64_t n0, std::uint64_t n, double lambda_ec, double eps_cl) {
  if (n0 < 1 || n0 > n) throw std::invalid_argument("need 1 <= n0 <= n");
  if (!(c_bits >= 0.0)) throw std::invalid_argument("c_bits must be >= 0");
  if (!(lambda_ec >= 0.0)) throw std::invalid_argument("lambda_ec must be >= 0");
  if (!(eps_cl > 0.0 && eps_cl <= 1.0)) {
    throw std::invalid_argument("eps_cl must lie in (0, 1]");
  }

  GenericKeyLength out;
  double best = std::numeric_limits<double>::infinity();
  for (std::uint64_t c0 = n0; c0 <= n; ++c0) {
    const double v = static_cast<double>(c0) * c_bits - gamma_bits(c0);
    if (v < best) {
      best = v;
      out.c0_min = c0;
    }
  }
  double ell = best - lambda_ec + std::log2(eps_cl);
  if (ell < 0.0) {
    ell = 0.0;
    out.clamped = true;
  }
  out.ell = ell;
  return out;
}

KeyRateReport b92_key_length(const ProtocolSpec& spec) {
  spec.validate();

  KeyRateReport r;
  r.N = spec.n_total;
  r.m = static_cast<std::uint64_t>(
      std::floor(spec.test_frac * static_cast<double>(spec.n_total)));
  if (r.m < 1) {
    throw std::invalid_argument("test fraction leaves no test rounds");
  }
  r.n = r.N - r.m;
  r.delta = delta_for_security(r.m, r.n, spec.eps);
  SamplingSpec{r.N, r.m, r.delta}.validate();
  r.eps_cl = sampling_failure_bound(r.m, r.n, r.delta);
  r.security_epsilon = security_level(r.eps_cl);

  const double p_a = acceptance_prob(spec.params);
  std::uint64_t n0 = 0;
  switch (spec.n0_policy.kind) {
    case N0Policy::Kind::expected:
      n0 = static_cast<std::uint64_t>(
          std::floor(p_a * static_cast<double>(r.n)));
      break;
    case N0Policy::Kind::explicit_count:
      if (spec.n0_policy.count > r.n) {
        throw std::invalid_argument("explicit n0 exceeds the key-round count");
      }
      n0 = spec.n0_policy.count;
      break;
    case N0Policy::Kind::slack_sigma: {
      const double nn = static_cast<double>(r.n);
      const double mean = p_a * nn;
      const double sd = std::sqrt(nn * p_a * (1.0 - p_a));
      const double lo = mean - spec.n0_policy.k_sigma * sd;
      n0 = lo > 0.0 ? static_cast<std::uint64_t>(std::floor(lo)) : 0;
      break;
    }
  }
  r.n0 = n0;

  // X and Z are mutually unbiased, so the per-bit overlap constant is exactly
  // one bit; using the literal 1.0 keeps n0*c_bits an integer.
  r.c_bits = 1.0;
  r.gamma_bits = gamma_entropy_bound(r.n, r.n0, spec.params.q, r.delta);
  const double q_z = key_error(spec.params);
  r.lambda_ec = static_cast<double>(r.n0) *
                binary_entropy(std::min(q_z + r.delta, 0.5));

  // The bound's key term c0*c_bits - gamma(c0) is nondecreasing in c0 (its
  // increment per step is -log2 of a branch fraction <= 1), so the minimum
  // over c0 >= n0 sits at n0; the generic scan engine re-checks this in the
  // verification suites.
  double ell = static_cast<double>(r.n0) * r.c_bits - r.gamma_bits -
               r.lambda_ec + std::log2(r.eps_cl);
  if (spec.eps_cor) ell += std::log2(*spec.eps_cor);
  if (ell < 0.0) {
    ell = 0.0;
    r.no_key = true;
  }
  r.ell = ell;
  r.rate = ell / static_cast<double>(r.N);
  return r;
}

double asymptotic_rate(const B92Params& params) {
  const double p_a = acceptance_prob(params);
  const double q_z = key_error(params);
  const double r =
      p_a * (1.0 - binary_entropy(std::min(params.q / p_a, 0.5)) -
             binary_entropy(q_z));
  return r > 0.0 ? r : 0.0;
}

namespace {

// Fixed log-spaced test fractions, 40 per decade from 1e-6 up, closed with
// 0.45.  Shared by every N so that the max over the grid stays pointwise
// monotone in N.
std::vector<double> test_fraction_grid() {
  std::vector<double> grid;
  for (int k = 0;; ++k) {
    const double f = 1e-6 * std::pow(10.0, k / 40.0);
    if (f >= 0.45) break;
    grid.push_back(f);
  }
  grid.push_back(0.45);
  return grid;
}

}  // namespace

KeyRateReport best_over_test_fraction(ProtocolSpec spec) {
  spec.validate();
  KeyRateReport best;
  bool have = false;
  for (double f : test_fraction_grid()) {
    spec.test_frac = f;
    KeyRateReport r;
    try {
      r = b92_key_length(spec);
    } catch (const std::invalid_argument&) {
      continue;  // grid point infeasible at this N (m = 0 or m >= N/2)
    }
    if (!have || r.ell > best.ell) {
      best = r;
      have = true;
    }
  }
  if (!have) {
    throw std::domain_error("no feasible test fraction at this block size");
  }
  return best;
}

std::vector<SweepRow> sweep(const SweepGrid& grid) {
  if (grid.theta.empty() || grid.x.empty() || grid.q.empty() ||
      grid.test_frac.empty() || grid.eps.empty() || grid.n_total.empty()) {
    throw std::invalid_argument("sweep grid has an empty axis");
  }
  std::vector<SweepRow> rows;
  for (double theta : grid.theta) {
    for (double x : grid.x) {
      for (double q : grid.q) {
        for (double f : grid.test_frac) {
          for (double eps : grid.eps) {
            for (std::uint64_t n_total : grid.n_total) {
              SweepRow row;
              ProtocolSpec spec;
              spec.n_total = n_total;
              spec.test_frac = f;
              spec.eps = eps;
              spec.params = B92Params{theta, x, q};
              try {
                row.report = b92_key_length(spec);
              } catch (const std::exception& e) {
                row.report.N = n_total;
                row.error = e.what();
              }
              rows.push_back(row);
            }
            if (grid.append_asymptote) {
              SweepRow row;
              row.asymptote = true;
              try {
                row.report.rate = asymptotic_rate(B92Params{theta, x, q});
              } catch (const std::exception& e) {
                row.error = e.what();
              }
              rows.push_back(row);
            }
          }
        }
      }
    }
  }
  return rows;
}

}  // namespace filterkey
