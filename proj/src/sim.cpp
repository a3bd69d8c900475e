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

#include "filterkey/sim.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>

#include "filterkey/exec.hpp"
#include "filterkey/rng.hpp"

namespace filterkey {

void SimConfig::validate() const {
  params.validate();
  if (rounds < 4) throw std::invalid_argument("rounds must be at least 4");
  if (m < 1 || 2 * m >= rounds) {
    throw std::invalid_argument("test subset must satisfy 1 <= m < N/2");
  }
  if (!(delta >= 0.0)) throw std::invalid_argument("delta must be >= 0");
  if (!(q_max >= 0.0 && q_max <= 1.0)) {
    throw std::invalid_argument("q_max must lie in [0, 1]");
  }
  if (n0_min > rounds - m) {
    throw std::invalid_argument("n0_min exceeds the key-round count");
  }
}

namespace {

// Zero probabilities below 1e-12 and renormalize, so branches that are only
// numerically nonzero can never fire in the sampler.
template <std::size_t K>
void clean_distribution(std::array<double, K>& p) {
  double total = 0.0;
  for (double v : p) total += v;
  if (std::fabs(total - 1.0) > 1e-12) {
    throw std::logic_error("branch probabilities do not sum to 1");
  }
  double kept = 0.0;
  for (double& v : p) {
    if (v < 1e-12) v = 0.0;
    kept += v;
  }
  for (double& v : p) v /= kept;
}

// Inverse-CDF draw skipping zero-probability branches; the fallback for
// u >= cumulative total (possible at the last ulp) is the last live branch.
template <std::size_t K>
std::size_t sample_index(const std::array<double, K>& p, double u) {
  double cum = 0.0;
  std::size_t last_live = 0;
  for (std::size_t i = 0; i < K; ++i) {
    if (p[i] <= 0.0) continue;
    last_live = i;
    cum += p[i];
    if (u < cum) return i;
  }
  return last_live;
}

Op2 z_projector(int a) {
  CVec2 e;
  e.v[a] = 1.0;
  return Op2::outer(e);
}

Op2 x_projector(int s) {
  const double r = 1.0 / std::sqrt(2.0);
  return Op2::outer(CVec2{r, s == 0 ? r : -r});
}

}  // namespace

std::array<double, 4> test_round_distribution(const B92Params& params) {
  params.validate();
  const State4 rho = depolarize(source_state(params.theta), params.q);
  std::array<double, 4> p{};
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      p[2 * i + j] = expect(rho, x_projector(i), x_projector(j)).real();
    }
  }
  clean_distribution(p);
  return p;
}

std::array<double, 6> key_round_distribution(const B92Params& params) {
  params.validate();
  const State4 rho = depolarize(source_state(params.theta), params.q);
  const B92Filters f = filter_ops(params.theta, params.x);
  const State4 kept = conjugate_on_B(rho, f.f0);
  const State4 lost = conjugate_on_B(rho, f.f1);
  std::array<double, 6> p{};
  for (int a = 0; a < 2; ++a) {
    // The kept state measured in Z realizes the conclusive outcomes: the
    // filter maps Z back onto itself with the detection amplitudes, so
    // F0 |z><z| F0 equals the direct POVM element M_z.
    for (int j = 0; j < 2; ++j) {
      p[3 * a + j] = expect(kept, z_projector(a), z_projector(j)).real();
    }
    p[3 * a + 2] = expect(lost, z_projector(a), Op2::identity()).real();
  }
  clean_distribution(p);
  return p;
}

Transcript run_protocol_trace(const SimConfig& cfg) {
  cfg.validate();
  const std::uint64_t n_rounds = cfg.rounds;

  const std::array<double, 4> test_p = test_round_distribution(cfg.params);
  const std::array<double, 6> key_p = key_round_distribution(cfg.params);

  // Stream 0 draws the test subset; round r draws from stream r+1.  Each
  // round's outcome is an independent function of (seed, round), so the
  // parallel fill below is trivially order- and worker-independent.
  CounterRng subset_rng(stream_key(cfg.seed, 0));
  std::vector<std::size_t> t = random_subset(
      subset_rng, static_cast<std::size_t>(n_rounds),
      static_cast<std::size_t>(cfg.m));
  std::sort(t.begin(), t.end());

  std::vector<std::uint8_t> is_test(n_rounds, 0);
  for (std::size_t pos : t) is_test[pos] = 1;

  std::vector<std::uint8_t> code(n_rounds);
  const int workers = worker_count();
#pragma omp parallel for num_threads(workers) schedule(static)
  for (long long r = 0; r < static_cast<long long>(n_rounds); ++r) {
    CounterRng rng(stream_key(cfg.seed, static_cast<std::uint64_t>(r) + 1));
    const double u = rng.next_double();
    code[r] = is_test[r] ? static_cast<std::uint8_t>(sample_index(test_p, u))
                         : static_cast<std::uint8_t>(sample_index(key_p, u));
  }

  Transcript out;
  out.t = std::move(t);
  out.d = BitString(n_rounds);
  std::uint64_t disagree = 0;
  for (std::uint64_t r = 0; r < n_rounds; ++r) {
    if (is_test[r]) {
      // Codes 1 (+-) and 2 (-+) are the X-basis disagreements.
      disagree += (code[r] == 1 || code[r] == 2);
      continue;
    }
    const int a = code[r] / 3;
    const int b = code[r] % 3;
    if (b == 2) {
      out.d.set(r, true);
      continue;
    }
    out.raw_key_A.push_back(a != 0);
    out.raw_key_B.push_back(b != 0);
    ++out.accepted;
    out.errors += (a != b);
  }
  out.s_observed =
      static_cast<double>(disagree) / static_cast<double>(cfg.m);
  out.aborted = out.s_observed > cfg.q_max || out.accepted < cfg.n0_min;
  return out;
}

SimStats estimate_statistics(const SimConfig& cfg, std::uint64_t repetitions) {
  cfg.validate();
  if (repetitions < 1) {
    throw std::invalid_argument("repetitions must be >= 1");
  }
  SimStats s;
  std::uint64_t x_disagree = 0;
  std::uint64_t errors = 0;
  for (std::uint64_t rep = 0; rep < repetitions; ++rep) {
    SimConfig c = cfg;
    c.seed = stream_key(cfg.seed, rep);
    const Transcript t = run_protocol_trace(c);
    s.test_rounds += cfg.m;
    s.key_rounds += cfg.rounds - cfg.m;
    s.accepted += t.accepted;
    errors += t.errors;
    x_disagree += static_cast<std::uint64_t>(
        std::llround(t.s_observed * static_cast<double>(cfg.m)));
  }

  auto binomial = [](std::uint64_t k, std::uint64_t n, double& hat,
                     double& sigma) {
    hat = static_cast<double>(k) / static_cast<double>(n);
    sigma = std::sqrt(hat * (1.0 - hat) / static_cast<double>(n));
  };
  binomial(s.accepted, s.key_rounds, s.p_a_hat, s.p_a_sigma);
  binomial(x_disagree, s.test_rounds, s.x_err_hat, s.x_err_sigma);
  if (s.accepted == 0) {
    throw std::runtime_error(
        "no conclusive rounds in any repetition; raw-key error undefined");
  }
  binomial(errors, s.accepted, s.q_z_hat, s.q_z_sigma);
  return s;
}

}  // namespace filterkey
