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

#include <cstdint>
#include <string>
#include <vector>

namespace filterkey {

/// Outcome of one verification suite: how many checks ran and which failed.
struct SuiteResult {
  std::string name;
  std::uint64_t checks = 0;
  std::vector<std::string> failures;

  bool passed() const { return failures.empty(); }
};

/// Tunables shared by the CLI and the acceptance harness.  The defaults are
/// sized for an interactive verify run; the acceptance harness turns the
/// exhaustive knobs up.
struct VerifyOptions {
  std::uint64_t seed = 1;
  std::uint64_t gamma_max_n = 8;    // exhaustive-vs-reduced sweep bound
  std::uint64_t sim_rounds = 200000;
  std::uint64_t filter_thetas = 20;
  double filter_tol = 1e-10;        // flipped by --self-test
};

/// Filter alignment over a theta grid, ideal and practical device quality:
/// residuals, scale magnitudes, and the |lambda(0|-)|^2 = x^2 identity.
SuiteResult verify_filter(const VerifyOptions& opt);

/// Exhaustive vs reduced vs entropy-bound ambiguity exponent for all word
/// lengths up to opt.gamma_max_n, all kept sizes, a grid of (s_max, delta).
SuiteResult verify_gamma(const VerifyOptions& opt);

/// Exhaustive subset failure probabilities against the analytic bound for
/// every disagreement weight at small N; Monte Carlo against bound + 4 sigma
/// at N = 10^4; serial/parallel estimator equality.
SuiteResult verify_sampling(const VerifyOptions& opt);

/// Closed-form acceptance probability against the Born-rule trace on a
/// 200-point parameter grid.
SuiteResult verify_born(const VerifyOptions& opt);

/// Simulator statistics against analytic values within 4 binomial standard
/// errors on a 12-point grid, opt.sim_rounds rounds per point.
SuiteResult verify_sim(const VerifyOptions& opt);

/// Random desk-scale instances of the support-size min-entropy bound.
SuiteResult verify_minentropy(const VerifyOptions& opt);

/// Key-length chain against an independently coded long-double oracle on 25
/// random specs, exhaustive minimizer scan, pinned regression value, and the
/// report's internal arithmetic identities.
SuiteResult verify_keyrate(const VerifyOptions& opt);

/// Rate curves: monotone in N, within 1% of the asymptote at N = 10^12,
/// ordered in q and in device quality.
SuiteResult verify_convergence(const VerifyOptions& opt);

/// Worker-count independence: identical serialized output with 1 and 4
/// workers for the Monte Carlo estimator and a simulated run.
SuiteResult verify_determinism(const VerifyOptions& opt);

/// All suite names, in canonical execution order.
std::vector<std::string> suite_names();

/// Run one suite by name (throws std::invalid_argument on unknown names) or
/// all of them in canonical order when `name` is empty.
std::vector<SuiteResult> run_suites(const std::string& name,
                                    const VerifyOptions& opt);

}  // namespace filterkey
