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
#include <optional>
#include <vector>

namespace filterkey {

/// Query for the adversarial-ambiguity exponent: over all discard patterns d
/// with c0 kept positions, all discarded-part values a, all reference words
/// b, and all accepted statistics s in [0, s_max], the worst-case log2 count
/// of kept-part words q whose full-word statistic lands within delta of s.
struct GammaQuery {
  std::uint64_t n = 0;     // word length after sampling
  std::uint64_t c0 = 0;    // kept (undiscarded) positions, 1 <= c0 <= n
  double s_max = 0.0;      // accepted-statistic interval is [0, s_max]
  double delta = 0.0;      // tolerance, > 0

  void validate() const;
};

/// The finite grid of accepted statistics that suffices for the XOR-weight
/// strategy: multiples of 1/n up to floor(n*s_max)/n, plus s_max itself.
std::vector<double> statistic_grid(std::uint64_t n, double s_max);

/// Literal evaluation of the definition: enumerate every (d, a, b), histogram
/// the statistic over all 2^c0 kept words, and take the max cell count over
/// the statistic grid.  Cells with zero count are skipped; nullopt is
/// returned only if every cell is empty (which cannot happen for XOR weight,
/// but the contract distinguishes "empty" from a count of one = 0 bits).
/// Requires n <= 14; throws beyond, directing callers to the reduced form.
std::optional<double> gamma_exhaustive(const GammaQuery& query);

/// Exact value for the XOR-weight strategy by weight-class counting: the
/// count for a cell depends only on the discarded-part disagreement u and the
/// kept-part disagreement j, giving sum-of-binomials cells.  Exact integer
/// arithmetic up to c0 = 62; log-space beyond.  Agrees with gamma_exhaustive
/// everywhere both are defined.  Requires n <= 4000.
std::optional<double> gamma_hamming_exact(const GammaQuery& query);

/// Analytic entropy bound: c0 * h((n/c0)(q_max + delta)), capped at c0 when
/// the ball radius reaches half the kept length.
double gamma_entropy_bound(std::uint64_t n, std::uint64_t c0, double q_max,
                           double delta);

}  // namespace filterkey
