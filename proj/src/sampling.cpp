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

#include "filterkey/sampling.hpp"

#include <omp.h>

#include <cmath>
#include <numeric>
#include <stdexcept>

#include "filterkey/exec.hpp"
#include "filterkey/rng.hpp"

namespace filterkey {

void SamplingSpec::validate() const {
  if (n_total < 3 || m < 1 || 2 * m >= n_total) {
    throw std::invalid_argument("SamplingSpec: need 1 <= m < N/2");
  }
  if (!(delta > 0.0)) {
    throw std::invalid_argument("SamplingSpec: delta must be positive");
  }
}

double xor_weight(const BitString& u, const BitString& v) {
  return relative_weight(u ^ v);
}

bool is_good_word(const BitString& qA, const BitString& qB,
                  const std::vector<std::size_t>& t, double delta,
                  const PairStatistic& stat) {
  if (qA.size() != qB.size()) {
    throw std::invalid_argument("is_good_word: record lengths differ");
  }
  if (t.empty() || t.size() >= qA.size()) {
    throw std::invalid_argument(
        "is_good_word: test set must be a nonempty proper subset");
  }
  const double g = stat(take_at(qA, t), take_at(qB, t));
  const double tau = stat(drop_at(qA, t), drop_at(qB, t));
  return std::fabs(g - tau) <= delta;
}

double sampling_failure_bound(std::uint64_t m, std::uint64_t n, double delta) {
  if (m < 1 || n < 1) {
    throw std::invalid_argument("sampling_failure_bound: m, n must be >= 1");
  }
  if (!(delta > 0.0)) {
    throw std::invalid_argument("sampling_failure_bound: delta must be > 0");
  }
  const double md = static_cast<double>(m), nd = static_cast<double>(n);
  const double e = delta * delta * md * (nd + md) / (md + nd + 2.0);
  const double v = 2.0 * std::exp(-e);
  return v < 1.0 ? v : 1.0;
}

double delta_for_security(std::uint64_t m, std::uint64_t n, double eps) {
  if (m < 1 || n < 1) {
    throw std::invalid_argument("delta_for_security: m, n must be >= 1");
  }
  if (!(eps > 0.0 && eps < 1.0)) {
    throw std::invalid_argument("delta_for_security: eps must lie in (0,1)");
  }
  const double md = static_cast<double>(m), nd = static_cast<double>(n);
  return std::sqrt((md + nd + 2.0) / (md * (md + nd)) *
                   std::log(50.0 / (eps * eps)));
}

double security_level(double eps_cl) {
  if (!(eps_cl >= 0.0)) {
    throw std::invalid_argument("security_level: eps_cl must be >= 0");
  }
  const double v = 5.0 * std::sqrt(eps_cl);
  return v < 1.0 ? v : 1.0;
}

namespace {

void check_estimate_args(const BitString& qA, const BitString& qB,
                         std::uint64_t m, std::uint64_t trials) {
  if (qA.size() != qB.size()) {
    throw std::invalid_argument("failure estimate: record lengths differ");
  }
  // The good-word test needs both the subset and its complement nonempty;
  // the analytic machinery elsewhere additionally wants m < N/2, but the
  // estimator itself is well defined for any proper subset.
  if (m < 1 || m >= qA.size()) {
    throw std::invalid_argument("failure estimate: need 1 <= m < N");
  }
  if (trials < 1) {
    throw std::invalid_argument("failure estimate: need at least one trial");
  }
}

FailureEstimate finish(std::uint64_t fails, std::uint64_t trials) {
  FailureEstimate e;
  e.fails = fails;
  e.trials = trials;
  e.p = static_cast<double>(fails) / static_cast<double>(trials);
  e.std_err =
      std::sqrt(e.p * (1.0 - e.p) / static_cast<double>(trials));
  return e;
}

// One trial of the packed fast path: draw the subset with the trial's own
// stream, count disagreements on it, and compare against the complement.
// `scratch` must be the identity permutation on entry and is restored on
// exit; `pos` is swap-log storage of size >= m.
bool trial_fails_packed(const BitString& x, std::uint64_t k_total,
                        std::uint64_t m, double delta, std::uint64_t key,
                        std::vector<std::uint32_t>& scratch,
                        std::vector<std::uint32_t>& pos) {
  const std::size_t n_total = x.size();
  CounterRng rng(key);
  // Partial Fisher-Yates over a persistent identity array; undo afterwards
  // so the next trial starts from identity without a refill.
  const std::size_t msz = static_cast<std::size_t>(m);
  std::uint64_t k_t = 0;
  for (std::size_t i = 0; i < msz; ++i) {
    const std::size_t j =
        i + static_cast<std::size_t>(rng.next_below(n_total - i));
    pos[i] = static_cast<std::uint32_t>(j);
    std::swap(scratch[i], scratch[j]);
    k_t += x.get(scratch[i]) ? 1 : 0;
  }
  for (std::size_t i = msz; i-- > 0;) std::swap(scratch[i], scratch[pos[i]]);

  const double g = static_cast<double>(k_t) / static_cast<double>(m);
  const double tau = static_cast<double>(k_total - k_t) /
                     static_cast<double>(n_total - m);
  return std::fabs(g - tau) > delta;
}

}  // namespace

FailureEstimate estimate_failure(const BitString& qA, const BitString& qB,
                                 std::uint64_t m, double delta,
                                 std::uint64_t trials, std::uint64_t seed) {
  check_estimate_args(qA, qB, m, trials);
  const BitString x = qA ^ qB;
  const std::uint64_t k_total = x.count();

  std::uint64_t fails = 0;
  const int workers = worker_count();
#pragma omp parallel num_threads(workers) reduction(+ : fails)
  {
    std::vector<std::uint32_t> scratch(x.size());
    std::iota(scratch.begin(), scratch.end(), 0u);
    std::vector<std::uint32_t> pos(static_cast<std::size_t>(m));
#pragma omp for schedule(static)
    for (long long trial = 0; trial < static_cast<long long>(trials);
         ++trial) {
      if (trial_fails_packed(x, k_total, m, delta,
                             stream_key(seed, static_cast<std::uint64_t>(trial)),
                             scratch, pos)) {
        ++fails;
      }
    }
  }
  return finish(fails, trials);
}

FailureEstimate estimate_failure_serial(const BitString& qA,
                                        const BitString& qB, std::uint64_t m,
                                        double delta, std::uint64_t trials,
                                        std::uint64_t seed) {
  check_estimate_args(qA, qB, m, trials);
  std::uint64_t fails = 0;
  for (std::uint64_t trial = 0; trial < trials; ++trial) {
    CounterRng rng(stream_key(seed, trial));
    const std::vector<std::size_t> t =
        random_subset(rng, qA.size(), static_cast<std::size_t>(m));
    if (!is_good_word(qA, qB, t, delta)) ++fails;
  }
  return finish(fails, trials);
}

FailureEstimate exhaustive_failure(const BitString& qA, const BitString& qB,
                                   std::uint64_t m, double delta) {
  if (qA.size() != qB.size()) {
    throw std::invalid_argument("exhaustive_failure: record lengths differ");
  }
  if (qA.size() > 20) {
    throw std::invalid_argument(
        "exhaustive_failure: only feasible for N <= 20");
  }
  if (m < 1 || m >= qA.size()) {
    throw std::invalid_argument("exhaustive_failure: need 1 <= m < N");
  }
  const std::size_t n = qA.size();
  const BitString x = qA ^ qB;
  const std::uint64_t k_total = x.count();

  std::uint64_t fails = 0, total = 0;
  // Lexicographic combination walk over subsets of size m.
  std::vector<std::size_t> idx(static_cast<std::size_t>(m));
  std::iota(idx.begin(), idx.end(), 0u);
  while (true) {
    std::uint64_t k_t = 0;
    for (std::size_t i : idx) k_t += x.get(i) ? 1 : 0;
    const double g = static_cast<double>(k_t) / static_cast<double>(m);
    const double tau = static_cast<double>(k_total - k_t) /
                       static_cast<double>(n - m);
    if (std::fabs(g - tau) > delta) ++fails;
    ++total;

    // Advance to the next combination.
    std::size_t i = idx.size();
    while (i > 0 && idx[i - 1] == n - (idx.size() - (i - 1))) --i;
    if (i == 0) break;
    ++idx[i - 1];
    for (std::size_t j = i; j < idx.size(); ++j) idx[j] = idx[j - 1] + 1;
  }
  FailureEstimate e = finish(fails, total);
  e.std_err = 0.0;  // exact enumeration
  return e;
}

}  // namespace filterkey
