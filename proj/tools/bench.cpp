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

// Timing harness for the parallel kernels against their serial references.
// Every pairing also checks that the two paths produce identical results,
// which is the project's determinism contract.

#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <string>

#include "filterkey/exec.hpp"
#include "filterkey/gamma.hpp"
#include "filterkey/qubit.hpp"
#include "filterkey/report_io.hpp"
#include "filterkey/sampling.hpp"
#include "filterkey/sim.hpp"

namespace {

using namespace filterkey;

template <typename F>
double best_ms(F&& fn, int reps) {
  double best = 1e300;
  for (int i = 0; i < reps; ++i) {
    const auto t0 = std::chrono::steady_clock::now();
    fn();
    const auto t1 = std::chrono::steady_clock::now();
    const double ms =
        std::chrono::duration<double, std::milli>(t1 - t0).count();
    if (ms < best) best = ms;
  }
  return best;
}

void report(const std::string& name, double serial_ms, double parallel_ms,
            int workers, bool equal) {
  std::printf("%-28s serial %9.2f ms   %d workers %9.2f ms   speedup %5.2fx   equal=%s\n",
              name.c_str(), serial_ms, workers, parallel_ms,
              serial_ms / parallel_ms, equal ? "yes" : "NO");
}

}  // namespace

int main() {
  const int workers = worker_count();
  std::printf("worker count: %d\n\n", workers);

  {
    const std::uint64_t n_total = 20000, m = 5000, trials = 20000;
    BitString qa(n_total), qb(n_total);
    for (std::uint64_t i = 0; i < n_total / 4; ++i) qb.set(i, true);
    FailureEstimate par, ser;
    const double par_ms = best_ms(
        [&] { par = estimate_failure(qa, qb, m, 0.03, trials, 7); }, 3);
    const double ser_ms = best_ms(
        [&] { ser = estimate_failure_serial(qa, qb, m, 0.03, trials, 7); }, 3);
    report("subset failure estimate", ser_ms, par_ms, workers,
           par.fails == ser.fails && par.p == ser.p);
  }

  {
    SimConfig cfg;
    cfg.rounds = 500000;
    cfg.m = 125000;
    cfg.params = B92Params{std::acos(-1.0) / 3.0, 1.0, 0.02};
    cfg.delta = 0.05;
    cfg.q_max = 0.1;
    cfg.n0_min = 1;
    cfg.seed = 7;
    std::string one, many;
    const double ser_ms = best_ms(
        [&] {
          ScopedWorkers w(1);
          one = transcript_json(cfg, run_protocol_trace(cfg));
        },
        3);
    const double par_ms = best_ms(
        [&] { many = transcript_json(cfg, run_protocol_trace(cfg)); }, 3);
    report("protocol trace", ser_ms, par_ms, workers, one == many);
  }

  {
    const GammaQuery query{10, 5, 0.25, 0.2};
    std::optional<double> one, many;
    const double ser_ms = best_ms(
        [&] {
          ScopedWorkers w(1);
          one = gamma_exhaustive(query);
        },
        3);
    const double par_ms = best_ms([&] { many = gamma_exhaustive(query); }, 3);
    report("exhaustive ambiguity count", ser_ms, par_ms, workers, one == many);
  }

  return 0;
}
