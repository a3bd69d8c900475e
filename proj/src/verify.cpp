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

#include "filterkey/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <sstream>
#include <stdexcept>

#include "filterkey/b92.hpp"
#include "filterkey/entropy.hpp"
#include "filterkey/exec.hpp"
#include "filterkey/gamma.hpp"
#include "filterkey/keyrate.hpp"
#include "filterkey/qubit.hpp"
#include "filterkey/report_io.hpp"
#include "filterkey/rng.hpp"
#include "filterkey/sampling.hpp"
#include "filterkey/sim.hpp"

namespace filterkey {

namespace {

const double kPi = std::acos(-1.0);

struct Recorder {
  SuiteResult result;

  explicit Recorder(const std::string& name) { result.name = name; }

  void check(bool ok, const std::string& what) {
    ++result.checks;
    if (!ok) result.failures.push_back(what);
  }
};

bool rel_close(double a, double b, double tol) {
  return std::fabs(a - b) <= tol * std::max(1.0, std::fabs(b));
}

double uniform(CounterRng& rng, double lo, double hi) {
  return lo + (hi - lo) * rng.next_double();
}

double log_uniform(CounterRng& rng, double lo, double hi) {
  return std::exp(uniform(rng, std::log(lo), std::log(hi)));
}

std::string describe(double theta, double x, double q) {
  std::ostringstream os;
  os << "theta=" << theta << " x=" << x << " q=" << q;
  return os.str();
}

}  // namespace

SuiteResult verify_filter(const VerifyOptions& opt) {
  Recorder rec("filter");
  const Basis2 basis_x = Basis2::X();
  const std::uint64_t n_theta = std::max<std::uint64_t>(opt.filter_thetas, 1);
  for (std::uint64_t i = 0; i < n_theta; ++i) {
    const double theta =
        0.1 + (kPi / 2.0 - 0.1) * static_cast<double>(i + 1) /
                  static_cast<double>(n_theta);
    const double practical = (1.0 + std::cos(theta)) / 2.0;
    for (double x : {1.0, practical}) {
      const std::string id = describe(theta, x, 0.0);
      B92Filters f;
      try {
        f = filter_ops(theta, x);
      } catch (const std::exception& e) {
        rec.check(false, "filter construction failed at " + id + ": " +
                             e.what());
        continue;
      }

      // Both filter outcomes must map X onto X up to scale.
      FilterScalars keep{}, discard{};
      bool aligned = true;
      try {
        keep = check_filter_relation(f.f0, basis_x, basis_x, opt.filter_tol);
      } catch (const std::exception& e) {
        aligned = false;
        rec.check(false, std::string("keep-filter alignment: ") + e.what() +
                             " at " + id);
      }
      if (aligned) rec.check(true, "");
      try {
        discard = check_filter_relation(f.f1, basis_x, basis_x,
                                        opt.filter_tol);
        rec.check(true, "");
      } catch (const std::exception& e) {
        rec.check(false, std::string("discard-filter alignment: ") + e.what() +
                             " at " + id);
      }

      if (aligned) {
        // Detection amplitude on the minus state: |lambda(0|-)|^2 = x^2.
        const double got = std::norm(keep.lambda[1]);
        std::ostringstream os;
        os << "|lambda(0|-)|^2 = " << got << " but x^2 = " << x * x << " at "
           << id;
        rec.check(std::fabs(got - x * x) <= 1e-10, os.str());
      }

      const double closed_gap =
          frobenius_norm(f.f0 - f0_closed_form(theta, x));
      rec.check(closed_gap <= 1e-10,
                "operator square root differs from the closed form by " +
                    format_sig12(closed_gap) + " at " + id);

      const double completeness =
          frobenius_norm(f.f0 * f.f0 + f.f1 * f.f1 - Op2::identity());
      rec.check(completeness <= 1e-10,
                "F0^2 + F1^2 - I has norm " + format_sig12(completeness) +
                    " at " + id);
    }
  }
  return rec.result;
}

SuiteResult verify_gamma(const VerifyOptions& opt) {
  Recorder rec("gamma");
  const std::uint64_t n_max = std::min<std::uint64_t>(opt.gamma_max_n, 14);
  for (std::uint64_t n = 2; n <= n_max; ++n) {
    for (std::uint64_t c0 = 1; c0 <= n; ++c0) {
      for (double q : {0.0, 0.1, 0.25}) {
        for (double delta : {0.05, 0.2}) {
          GammaQuery query{n, c0, q, delta};
          std::ostringstream id;
          id << "n=" << n << " c0=" << c0 << " s_max=" << q
             << " delta=" << delta;
          std::optional<double> brute, reduced;
          try {
            brute = gamma_exhaustive(query);
            reduced = gamma_hamming_exact(query);
          } catch (const std::exception& e) {
            rec.check(false, "evaluator threw at " + id.str() + ": " +
                                 e.what());
            continue;
          }
          rec.check(brute.has_value() && reduced.has_value(),
                    "empty ambiguity cell at " + id.str());
          if (!brute || !reduced) continue;
          rec.check(*brute == *reduced,
                    "exhaustive " + format_sig12(*brute) +
                        " != weight-class " + format_sig12(*reduced) +
                        " at " + id.str());
          const double bound = gamma_entropy_bound(n, c0, q, delta);
          rec.check(*reduced <= bound + 1e-9,
                    "exact value " + format_sig12(*reduced) +
                        " exceeds entropy bound " + format_sig12(bound) +
                        " at " + id.str());
        }
      }
    }
  }
  return rec.result;
}

SuiteResult verify_sampling(const VerifyOptions& opt) {
  Recorder rec("sampling");

  // Exhaustive subsets: the bound must dominate every disagreement weight.
  for (std::uint64_t n_total : {8ULL, 12ULL}) {
    const std::uint64_t m = n_total / 4;
    for (double delta : {0.1, 0.25}) {
      const double bound = sampling_failure_bound(m, n_total - m, delta);
      for (std::uint64_t w = 0; w <= n_total; ++w) {
        BitString qa(n_total), qb(n_total);
        for (std::uint64_t i = 0; i < w; ++i) qb.set(i, true);
        const FailureEstimate fe = exhaustive_failure(qa, qb, m, delta);
        std::ostringstream id;
        id << "N=" << n_total << " m=" << m << " delta=" << delta
           << " weight=" << w;
        rec.check(fe.p <= bound + 1e-12,
                  "exhaustive failure " + format_sig12(fe.p) +
                      " above bound " + format_sig12(bound) + " at " +
                      id.str());
      }
    }
  }

  // Monte Carlo at protocol scale stays under bound + 4 sigma.
  {
    const std::uint64_t n_total = 10000, m = 2500, trials = 20000;
    const double delta = 0.05;
    BitString qa(n_total), qb(n_total);
    for (std::uint64_t i = 0; i < n_total / 4; ++i) qb.set(i, true);
    const FailureEstimate fe =
        estimate_failure(qa, qb, m, delta, trials, opt.seed);
    const double bound = sampling_failure_bound(m, n_total - m, delta);
    rec.check(fe.p <= bound + 4.0 * fe.std_err,
              "Monte Carlo failure " + format_sig12(fe.p) +
                  " above bound + 4 sigma (" + format_sig12(bound) + " + 4*" +
                  format_sig12(fe.std_err) + ")");
    const FailureEstimate ref =
        estimate_failure_serial(qa, qb, m, delta, trials, opt.seed);
    rec.check(fe.fails == ref.fails && fe.p == ref.p,
              "parallel estimator disagrees with the serial reference: " +
                  std::to_string(fe.fails) + " vs " +
                  std::to_string(ref.fails) + " failures");
  }

  // The bound clamps at 1 and inverts delta_for_security exactly.
  rec.check(sampling_failure_bound(5, 5, 1e-12) == 1.0,
            "failure bound failed to clamp at 1 for vanishing delta");
  for (double eps : {1e-4, 1e-6, 1e-10}) {
    const double delta = delta_for_security(2500, 7500, eps);
    const double back =
        security_level(sampling_failure_bound(2500, 7500, delta));
    rec.check(rel_close(back, eps, 1e-9),
              "security level round trip gave " + format_sig12(back) +
                  " for target " + format_sig12(eps));
  }
  return rec.result;
}

SuiteResult verify_born(const VerifyOptions&) {
  Recorder rec("born");
  for (int i = 0; i < 10; ++i) {
    const double theta = 0.1 + (kPi / 2.0 - 0.1) * (i + 1) / 10.0;
    const double practical = (1.0 + std::cos(theta)) / 2.0;
    for (double x : {1.0, practical}) {
      for (int j = 0; j < 10; ++j) {
        const double q = 0.5 * j / 9.0;
        const B92Params params{theta, x, q};
        const std::string id = describe(theta, x, q);
        try {
          // acceptance_prob cross-checks the closed form against the
          // Born-rule trace at 1e-12 internally and throws on mismatch.
          const double pa = acceptance_prob(params);
          const double qz = key_error(params);
          rec.check(pa > 0.0 && pa <= 1.0 + 1e-12,
                    "acceptance probability " + format_sig12(pa) +
                        " out of range at " + id);
          rec.check(qz >= 0.0 && qz <= 0.5 + 1e-12,
                    "key error rate " + format_sig12(qz) +
                        " out of range at " + id);
        } catch (const std::exception& e) {
          rec.check(false, std::string("Born comparison failed: ") + e.what() +
                               " at " + id);
        }
      }
    }
  }
  return rec.result;
}

SuiteResult verify_sim(const VerifyOptions& opt) {
  Recorder rec("sim");
  std::uint64_t point = 0;
  for (double theta : {kPi / 3.0, kPi / 2.0}) {
    const double practical = (1.0 + std::cos(theta)) / 2.0;
    for (double x : {1.0, practical}) {
      for (double q : {0.01, 0.05, 0.1}) {
        const B92Params params{theta, x, q};
        const std::string id = describe(theta, x, q);
        SimConfig cfg;
        cfg.rounds = std::max<std::uint64_t>(opt.sim_rounds, 1000);
        cfg.m = cfg.rounds / 4;
        cfg.params = params;
        cfg.delta = 0.05;
        cfg.q_max = 1.0;
        cfg.n0_min = 0;
        cfg.seed = stream_key(opt.seed, 900 + point++);
        SimStats st;
        try {
          st = estimate_statistics(cfg, 1);
        } catch (const std::exception& e) {
          rec.check(false,
                    std::string("simulation failed: ") + e.what() + " at " + id);
          continue;
        }
        const double pa = acceptance_prob(params);
        const double qz = key_error(params);
        rec.check(std::fabs(st.p_a_hat - pa) <= 4.0 * st.p_a_sigma,
                  "p_a_hat " + format_sig12(st.p_a_hat) + " vs analytic " +
                      format_sig12(pa) + " beyond 4 sigma at " + id);
        rec.check(std::fabs(st.q_z_hat - qz) <= 4.0 * st.q_z_sigma,
                  "q_z_hat " + format_sig12(st.q_z_hat) + " vs analytic " +
                      format_sig12(qz) + " beyond 4 sigma at " + id);
        rec.check(std::fabs(st.x_err_hat - q) <= 4.0 * st.x_err_sigma,
                  "x_err_hat " + format_sig12(st.x_err_hat) +
                      " vs noise level " + format_sig12(q) +
                      " beyond 4 sigma at " + id);
      }
    }
  }
  return rec.result;
}

SuiteResult verify_minentropy(const VerifyOptions& opt) {
  Recorder rec("minentropy");
  CounterRng rng(stream_key(opt.seed, 777));
  auto random_state = [&rng]() {
    for (;;) {
      CVec2 v{cd(uniform(rng, -1.0, 1.0), uniform(rng, -1.0, 1.0)),
              cd(uniform(rng, -1.0, 1.0), uniform(rng, -1.0, 1.0))};
      if (v.norm() > 1e-3) return v.normalized();
    }
  };

  for (int i = 0; i < 100; ++i) {
    const std::size_t j_size = 1 + rng.next_below(2);
    Basis2 m;
    std::string mname;
    switch (rng.next_below(3)) {
      case 0:
        m = Basis2::X();
        mname = "X";
        break;
      case 1:
        m = Basis2::Z();
        mname = "Z";
        break;
      default: {
        const double phi = uniform(rng, 0.0, kPi / 2.0);
        m = Basis2::rotated(phi);
        mname = "rotated(" + format_sig12(phi) + ")";
        break;
      }
    }
    std::vector<CVec2> e_states;
    for (std::size_t a = 0; a < j_size; ++a) e_states.push_back(random_state());
    const SupportBoundCheck c = check_support_entropy_bound(j_size, e_states, m);
    std::ostringstream id;
    id << "instance " << i << " |J|=" << j_size << " M=" << mname;
    rec.check(c.holds, "min-entropy " + format_sig12(c.lhs) +
                           " below bound " + format_sig12(c.rhs) + " at " +
                           id.str());
  }

  // Pinned endpoints of the bound.
  for (int i = 0; i < 3; ++i) {
    const SupportBoundCheck cx =
        check_support_entropy_bound(1, {random_state()}, Basis2::X());
    rec.check(std::fabs(cx.lhs - 1.0) <= 1e-9 &&
                  std::fabs(cx.rhs - 1.0) <= 1e-9,
              "|J|=1 with an unbiased basis should meet the bound at 1 bit, "
              "got lhs=" +
                  format_sig12(cx.lhs) + " rhs=" + format_sig12(cx.rhs));
    const SupportBoundCheck cz =
        check_support_entropy_bound(1, {random_state()}, Basis2::Z());
    rec.check(std::fabs(cz.lhs) <= 1e-9 && std::fabs(cz.rhs) <= 1e-9,
              "|J|=1 same-basis case should sit at 0 bits, got lhs=" +
                  format_sig12(cz.lhs) + " rhs=" + format_sig12(cz.rhs));
  }
  {
    const SupportBoundCheck c2 = check_support_entropy_bound(
        2, {random_state(), random_state()}, Basis2::X());
    rec.check(std::fabs(c2.rhs) <= 1e-9 && c2.holds,
              "|J|=2 unbiased case should have a zero bound, got rhs=" +
                  format_sig12(c2.rhs));
  }
  return rec.result;
}

namespace {

long double entropy_ld(long double v) {
  if (v <= 0.0L || v >= 1.0L) return 0.0L;
  return -(v * log2l(v) + (1.0L - v) * log2l(1.0L - v));
}

// Independent transcription of the finite-size chain in extended precision;
// deliberately coded from the formulas, not by calling the library.
struct OracleEval {
  unsigned long long m = 0, n = 0, n0 = 0;
  long double delta = 0, eps_cl = 0, gamma = 0, lambda = 0, ell = 0, rate = 0;
};

OracleEval keyrate_oracle(double theta, double x, double q, double f,
                          double eps, unsigned long long n_total) {
  const long double a2 = (1.0L + cosl(static_cast<long double>(theta))) / 2.0L;
  const long double b2 = (1.0L - cosl(static_cast<long double>(theta))) / 2.0L;
  const long double det = static_cast<long double>(x) * x / (2.0L * a2);
  const long double acc = 4.0L * a2 * b2;
  const long double pa =
      det * (acc - 2.0L * static_cast<long double>(q) * (acc - 1.0L));
  const long double qz = det * static_cast<long double>(q) / pa;

  OracleEval o;
  o.m = static_cast<unsigned long long>(
      floorl(static_cast<long double>(f) * static_cast<long double>(n_total)));
  o.n = n_total - o.m;
  const long double md = static_cast<long double>(o.m);
  const long double nd = static_cast<long double>(o.n);
  o.delta = sqrtl((md + nd + 2.0L) / (md * (md + nd)) *
                  logl(50.0L / (static_cast<long double>(eps) * eps)));
  o.eps_cl = 2.0L * expl(-o.delta * o.delta * md * (md + nd) / (md + nd + 2.0L));
  if (o.eps_cl > 1.0L) o.eps_cl = 1.0L;

  o.n0 = static_cast<unsigned long long>(floorl(pa * nd));
  const long double n0d = static_cast<long double>(o.n0);
  const long double ball = (nd / n0d) * (static_cast<long double>(q) + o.delta);
  o.gamma = ball >= 0.5L ? n0d : n0d * entropy_ld(ball);
  long double ez = qz + o.delta;
  if (ez > 0.5L) ez = 0.5L;
  o.lambda = n0d * entropy_ld(ez);
  long double ell = n0d - o.gamma - o.lambda + log2l(o.eps_cl);
  if (ell < 0.0L) ell = 0.0L;
  o.ell = ell;
  o.rate = ell / static_cast<long double>(n_total);
  return o;
}

}  // namespace

SuiteResult verify_keyrate(const VerifyOptions& opt) {
  Recorder rec("keyrate");

  auto compare = [&rec](const ProtocolSpec& spec, const std::string& id) {
    KeyRateReport r;
    try {
      r = b92_key_length(spec);
    } catch (const std::exception& e) {
      rec.check(false, "key length failed at " + id + ": " + e.what());
      return;
    }
    const OracleEval o =
        keyrate_oracle(spec.params.theta, spec.params.x, spec.params.q,
                       spec.test_frac, spec.eps, spec.n_total);
    rec.check(r.m == o.m && r.n == o.n && r.n0 == o.n0,
              "count mismatch vs oracle at " + id + ": m " +
                  std::to_string(r.m) + "/" + std::to_string(o.m) + ", n0 " +
                  std::to_string(r.n0) + "/" + std::to_string(o.n0));
    struct Field {
      const char* name;
      double got;
      long double want;
      double tol;
    } fields[] = {
        {"delta", r.delta, o.delta, 1e-12},
        {"eps_cl", r.eps_cl, o.eps_cl, 1e-12},
        {"gamma_bits", r.gamma_bits, o.gamma, 1e-9},
        {"lambda_ec", r.lambda_ec, o.lambda, 1e-9},
        {"ell", r.ell, o.ell, 1e-9},
        {"rate", r.rate, o.rate, 1e-9},
    };
    for (const Field& fl : fields) {
      rec.check(rel_close(fl.got, static_cast<double>(fl.want), fl.tol),
                std::string(fl.name) + " " + format_sig12(fl.got) +
                    " differs from oracle " +
                    format_sig12(static_cast<double>(fl.want)) + " at " + id);
    }

    // The generic scan must land on c0 = n0 and reproduce the same length.
    if (r.n0 >= 1) {
      const GenericKeyLength gk = generic_key_length(
          r.c_bits,
          [&r, &spec](std::uint64_t c0) {
            return gamma_entropy_bound(r.n, c0, spec.params.q, r.delta);
          },
          r.n0, r.n, r.lambda_ec, r.eps_cl);
      rec.check(gk.c0_min == r.n0,
                "scan minimizer c0=" + std::to_string(gk.c0_min) +
                    " is not n0=" + std::to_string(r.n0) + " at " + id);
      rec.check(gk.ell == r.ell, "scan key length " + format_sig12(gk.ell) +
                                     " != direct " + format_sig12(r.ell) +
                                     " at " + id);
    }

    // Report arithmetic identities.
    rec.check(rel_close(sampling_failure_bound(r.m, r.n, r.delta), r.eps_cl,
                        1e-12),
              "eps_cl does not recompute from (m, n, delta) at " + id);
    rec.check(rel_close(security_level(r.eps_cl), r.security_epsilon, 1e-12),
              "security_epsilon does not recompute from eps_cl at " + id);
    rec.check(rel_close(r.rate * static_cast<double>(r.N), r.ell, 1e-12),
              "rate * N does not recompute ell at " + id);
  };

  // Pinned regression at the ideal point.
  {
    ProtocolSpec spec;
    spec.n_total = 1000000;
    spec.test_frac = 0.25;
    spec.eps = 1e-6;
    spec.params = B92Params{kPi / 2.0, 1.0, 0.01};
    KeyRateReport r = b92_key_length(spec);
    rec.check(r.m == 250000 && r.n == 750000 && r.n0 == 750000,
              "pinned regression counts moved: m=" + std::to_string(r.m) +
                  " n0=" + std::to_string(r.n0));
    rec.check(rel_close(r.delta, 0.011232650124960705, 1e-12),
              "pinned regression delta moved: " + format_sig12(r.delta));
    rec.check(rel_close(r.ell, 527495.4623057476, 1e-9),
              "pinned regression key length moved: " + format_sig12(r.ell));
    rec.check(rel_close(r.rate, 0.5274954623057476, 1e-9),
              "pinned regression rate moved: " + format_sig12(r.rate));
  }

  // Extended-precision comparison at a fixed generic point. The ideal point
  // is excluded on purpose: there p_a * n sits exactly on a count boundary,
  // so double and long double legitimately floor to different n0.
  {
    ProtocolSpec spec;
    spec.n_total = 217001;
    spec.test_frac = 0.25;
    spec.eps = 1e-7;
    spec.params = B92Params{1.1, 0.875, 0.0175};
    compare(spec, "pinned generic point");
  }

  // Random specs against the oracle.
  CounterRng rng(stream_key(opt.seed, 5000));
  for (int i = 0; i < 25; ++i) {
    ProtocolSpec spec;
    spec.params.theta = uniform(rng, 0.3, kPi / 2.0 - 0.05);
    switch (rng.next_below(3)) {
      case 0:
        spec.params.x = 1.0;
        break;
      case 1:
        spec.params.x = (1.0 + std::cos(spec.params.theta)) / 2.0;
        break;
      default:
        spec.params.x = uniform(rng, 0.5, 1.0);
        break;
    }
    spec.params.q = uniform(rng, 0.001, 0.12);
    spec.test_frac = uniform(rng, 0.1, 0.45);
    spec.eps = log_uniform(rng, 1e-10, 1e-4);
    spec.n_total =
        static_cast<std::uint64_t>(log_uniform(rng, 1e4, 3e5));
    std::ostringstream id;
    id << "random spec " << i << " (" <<
        describe(spec.params.theta, spec.params.x, spec.params.q)
       << " f=" << spec.test_frac << " eps=" << spec.eps
       << " N=" << spec.n_total << ")";
    compare(spec, id.str());
  }
  return rec.result;
}

SuiteResult verify_convergence(const VerifyOptions&) {
  Recorder rec("convergence");
  std::vector<std::uint64_t> sizes;
  for (std::uint64_t n = 10000; n <= 1000000000000ULL; n *= 10) {
    sizes.push_back(n);
  }

  for (double theta : {kPi / 3.0, kPi / 2.0}) {
    const double practical = (1.0 + std::cos(theta)) / 2.0;
    const std::vector<double> xs{1.0, practical};
    const std::vector<double> qs{0.01, 0.03};
    // rates[xi][qi][ni]
    std::vector<std::vector<std::vector<double>>> rates(
        xs.size(), std::vector<std::vector<double>>(
                       qs.size(), std::vector<double>(sizes.size(), 0.0)));

    for (std::size_t xi = 0; xi < xs.size(); ++xi) {
      for (std::size_t qi = 0; qi < qs.size(); ++qi) {
        const B92Params params{theta, xs[xi], qs[qi]};
        const std::string id = describe(theta, xs[xi], qs[qi]);
        for (std::size_t ni = 0; ni < sizes.size(); ++ni) {
          ProtocolSpec spec;
          spec.n_total = sizes[ni];
          spec.eps = 1e-6;
          spec.params = params;
          rates[xi][qi][ni] = best_over_test_fraction(spec).rate;
        }
        for (std::size_t ni = 0; ni + 1 < sizes.size(); ++ni) {
          rec.check(rates[xi][qi][ni + 1] >= rates[xi][qi][ni] - 1e-12,
                    "rate not nondecreasing between N=" +
                        std::to_string(sizes[ni]) + " and N=" +
                        std::to_string(sizes[ni + 1]) + " at " + id);
        }
        const double asym = asymptotic_rate(params);
        const double last = rates[xi][qi].back();
        rec.check(last >= 0.99 * asym,
                  "rate at N=1e12 (" + format_sig12(last) +
                      ") further than 1% from the asymptote (" +
                      format_sig12(asym) + ") at " + id);
        rec.check(last <= asym + 1e-9,
                  "rate at N=1e12 (" + format_sig12(last) +
                      ") exceeds the asymptote (" + format_sig12(asym) +
                      ") at " + id);
      }
      for (std::size_t ni = 0; ni < sizes.size(); ++ni) {
        rec.check(rates[xi][0][ni] >= rates[xi][1][ni] - 1e-12,
                  "rate increased with noise at theta=" +
                      format_sig12(theta) + " x=" + format_sig12(xs[xi]) +
                      " N=" + std::to_string(sizes[ni]));
      }
    }
    for (std::size_t qi = 0; qi < qs.size(); ++qi) {
      for (std::size_t ni = 0; ni < sizes.size(); ++ni) {
        rec.check(rates[1][qi][ni] <= rates[0][qi][ni] + 1e-12,
                  "practical device rate above ideal at theta=" +
                      format_sig12(theta) + " q=" + format_sig12(qs[qi]) +
                      " N=" + std::to_string(sizes[ni]));
      }
    }
  }
  return rec.result;
}

SuiteResult verify_determinism(const VerifyOptions& opt) {
  Recorder rec("determinism");

  const std::uint64_t n_total = 2000, m = 500, trials = 5000;
  BitString qa(n_total), qb(n_total);
  for (std::uint64_t i = 0; i < n_total / 4; ++i) qb.set(i, true);

  SimConfig cfg;
  cfg.rounds = 20000;
  cfg.m = 5000;
  cfg.params = B92Params{kPi / 3.0, 1.0, 0.02};
  cfg.delta = 0.05;
  cfg.q_max = 0.1;
  cfg.n0_min = 1;
  cfg.seed = opt.seed;

  FailureEstimate mc1, mc4;
  std::string sim1, sim4;
  {
    ScopedWorkers w(1);
    mc1 = estimate_failure(qa, qb, m, 0.05, trials, opt.seed);
    sim1 = transcript_json(cfg, run_protocol_trace(cfg));
  }
  {
    ScopedWorkers w(4);
    mc4 = estimate_failure(qa, qb, m, 0.05, trials, opt.seed);
    sim4 = transcript_json(cfg, run_protocol_trace(cfg));
  }
  rec.check(mc1.fails == mc4.fails && mc1.p == mc4.p,
            "Monte Carlo estimator depends on the worker count: " +
                std::to_string(mc1.fails) + " vs " + std::to_string(mc4.fails));
  const FailureEstimate ref =
      estimate_failure_serial(qa, qb, m, 0.05, trials, opt.seed);
  rec.check(mc1.fails == ref.fails,
            "parallel estimator differs from the serial reference");
  rec.check(sim1 == sim4, "simulated transcript depends on the worker count");

  const std::string sim_again = transcript_json(cfg, run_protocol_trace(cfg));
  rec.check(sim4 == sim_again, "repeated run with one seed is not identical");

  SimConfig other = cfg;
  other.seed = opt.seed + 1;
  rec.check(transcript_json(other, run_protocol_trace(other)) != sim_again,
            "distinct seeds produced identical transcripts");
  return rec.result;
}

std::vector<std::string> suite_names() {
  return {"filter",     "gamma",   "sampling",    "born",       "sim",
          "minentropy", "keyrate", "convergence", "determinism"};
}

std::vector<SuiteResult> run_suites(const std::string& name,
                                    const VerifyOptions& opt) {
  struct Entry {
    const char* name;
    SuiteResult (*fn)(const VerifyOptions&);
  };
  static const Entry entries[] = {
      {"filter", verify_filter},           {"gamma", verify_gamma},
      {"sampling", verify_sampling},       {"born", verify_born},
      {"sim", verify_sim},                 {"minentropy", verify_minentropy},
      {"keyrate", verify_keyrate},         {"convergence", verify_convergence},
      {"determinism", verify_determinism},
  };
  std::vector<SuiteResult> out;
  for (const Entry& e : entries) {
    if (name.empty() || name == e.name) out.push_back(e.fn(opt));
  }
  if (out.empty()) {
    std::string known;
    for (const Entry& e : entries) {
      if (!known.empty()) known += ", ";
      known += e.name;
    }
    throw std::invalid_argument("unknown suite '" + name + "' (known: " +
                                known + ")");
  }
  return out;
}

}  // namespace filterkey
