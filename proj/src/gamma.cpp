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

#include "filterkey/gamma.hpp"

#include <omp.h>

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <stdexcept>

#include "filterkey/entropy.hpp"
#include "filterkey/exec.hpp"

namespace filterkey {

void GammaQuery::validate() const {
  if (c0 < 1 || c0 > n) {
    throw std::invalid_argument("GammaQuery: need 1 <= c0 <= n");
  }
  if (!(s_max >= 0.0 && s_max <= 1.0)) {
    throw std::invalid_argument("GammaQuery: s_max outside [0,1]");
  }
  if (!(delta > 0.0)) {
    throw std::invalid_argument("GammaQuery: delta must be positive");
  }
}

std::vector<double> statistic_grid(std::uint64_t n, double s_max) {
  std::vector<double> grid;
  const std::uint64_t k_max = static_cast<std::uint64_t>(
      std::floor(static_cast<double>(n) * s_max));
  for (std::uint64_t k = 0; k <= k_max; ++k) {
    grid.push_back(static_cast<double>(k) / static_cast<double>(n));
  }
  if (grid.empty() || grid.back() != s_max) grid.push_back(s_max);
  return grid;
}

namespace {

// Admissible full-word disagreement counts k for each grid statistic s:
// adm[si][k] <=> |s - k/n| <= delta.  Both evaluators share this exact
// double-precision test, so their counts agree bit for bit.
std::vector<std::array<bool, 4001>> admissibility(
    const std::vector<double>& grid, std::uint64_t n, double delta) {
  std::vector<std::array<bool, 4001>> adm(grid.size());
  for (std::size_t si = 0; si < grid.size(); ++si) {
    for (std::uint64_t k = 0; k <= n; ++k) {
      adm[si][k] =
          std::fabs(grid[si] - static_cast<double>(k) / static_cast<double>(n)) <=
          delta;
    }
  }
  return adm;
}

// All n-bit masks with exactly `ones` set bits, ascending.
std::vector<std::uint32_t> masks_with_popcount(unsigned n, unsigned ones) {
  std::vector<std::uint32_t> out;
  for (std::uint32_t d = 0; d < (1u << n); ++d) {
    if (static_cast<unsigned>(std::popcount(d)) == ones) out.push_back(d);
  }
  return out;
}

// Scatter table: entry w has the bits of w distributed, in order, over the
// listed positions.
std::vector<std::uint32_t> scatter_table(const std::vector<unsigned>& pos) {
  const std::size_t words = std::size_t{1} << pos.size();
  std::vector<std::uint32_t> table(words, 0);
  for (std::size_t w = 0; w < words; ++w) {
    std::uint32_t v = 0;
    for (std::size_t i = 0; i < pos.size(); ++i) {
      if ((w >> i) & 1u) v |= 1u << pos[i];
    }
    table[w] = v;
  }
  return table;
}

}  // namespace

std::optional<double> gamma_exhaustive(const GammaQuery& query) {
  query.validate();
  if (query.n > 14) {
    throw std::invalid_argument(
        "gamma_exhaustive: n > 14 is infeasible; use gamma_hamming_exact or "
        "gamma_entropy_bound");
  }
  const unsigned n = static_cast<unsigned>(query.n);
  const unsigned c0 = static_cast<unsigned>(query.c0);
  const unsigned n1 = n - c0;  // discarded positions

  const std::vector<double> grid = statistic_grid(query.n, query.s_max);
  const auto adm = admissibility(grid, query.n, query.delta);

  // Discard patterns: d bit 1 = discarded, so c0 zeros.
  const std::vector<std::uint32_t> ds = masks_with_popcount(n, n1);

  std::uint64_t best = 0;
  const int workers = worker_count();
#pragma omp parallel for schedule(dynamic) num_threads(workers) \
    reduction(max : best)
  for (long long di = 0; di < static_cast<long long>(ds.size()); ++di) {
    const std::uint32_t d = ds[static_cast<std::size_t>(di)];
    std::vector<unsigned> kept, disc;
    for (unsigned i = 0; i < n; ++i) {
      if ((d >> i) & 1u) {
        disc.push_back(i);
      } else {
        kept.push_back(i);
      }
    }
    const std::vector<std::uint32_t> sq = scatter_table(kept);
    const std::vector<std::uint32_t> sa = scatter_table(disc);

    std::array<std::uint64_t, 15> hist{};
    for (std::uint32_t a = 0; a < (1u << n1); ++a) {
      const std::uint32_t base = sa[a];
      for (std::uint32_t b = 0; b < (1u << n); ++b) {
        hist.fill(0);
        for (std::uint32_t qw = 0; qw < (1u << c0); ++qw) {
          const unsigned k =
              static_cast<unsigned>(std::popcount((base | sq[qw]) ^ b));
          ++hist[k];
        }
        for (std::size_t si = 0; si < grid.size(); ++si) {
          std::uint64_t cnt = 0;
          for (unsigned k = 0; k <= n; ++k) {
            if (adm[si][k]) cnt += hist[k];
          }
          if (cnt > best) best = cnt;
        }
      }
    }
  }

  if (best == 0) return std::nullopt;
  return std::log2(static_cast<double>(best));
}

std::optional<double> gamma_hamming_exact(const GammaQuery& query) {
  query.validate();
  if (query.n > 4000) {
    throw std::invalid_argument("gamma_hamming_exact: n > 4000 unsupported");
  }
  const std::uint64_t n = query.n, c0 = query.c0, n1 = n - c0;
  const std::vector<double> grid = statistic_grid(n, query.s_max);

  // Contiguous admissible k-interval per statistic (same double test as the
  // exhaustive path).
  struct KRange {
    std::uint64_t lo = 1, hi = 0;
    bool empty = true;
  };
  std::vector<KRange> ranges(grid.size());
  for (std::size_t si = 0; si < grid.size(); ++si) {
    for (std::uint64_t k = 0; k <= n; ++k) {
      const bool ok = std::fabs(grid[si] - static_cast<double>(k) /
                                               static_cast<double>(n)) <=
                      query.delta;
      if (ok) {
        if (ranges[si].empty) {
          ranges[si].lo = k;
          ranges[si].empty = false;
        }
        ranges[si].hi = k;
      }
    }
  }

  // A cell is (s, u) with u the discarded-part disagreement; the kept-part
  // disagreement j contributes C(c0, j) words, so the cell count is the
  // binomial sum over the admissible j-window.
  if (c0 <= 62) {
    // Exact integer prefix sums: total is at most 2^62.
    std::vector<std::uint64_t> prefix(static_cast<std::size_t>(c0) + 2, 0);
    std::uint64_t binom = 1;
    for (std::uint64_t j = 0; j <= c0; ++j) {
      prefix[static_cast<std::size_t>(j) + 1] =
          prefix[static_cast<std::size_t>(j)] + binom;
      if (j < c0) binom = binom / (j + 1) * (c0 - j) +
                          binom % (j + 1) * (c0 - j) / (j + 1);
    }
    std::uint64_t best = 0;
    for (const KRange& r : ranges) {
      if (r.empty) continue;
      for (std::uint64_t u = 0; u <= n1; ++u) {
        if (r.hi < u) continue;
        const std::uint64_t j_lo = r.lo > u ? r.lo - u : 0;
        const std::uint64_t j_hi = std::min(r.hi - u, c0);
        if (j_lo > j_hi) continue;
        const std::uint64_t cnt = prefix[static_cast<std::size_t>(j_hi) + 1] -
                                  prefix[static_cast<std::size_t>(j_lo)];
        if (cnt > best) best = cnt;
      }
    }
    if (best == 0) return std::nullopt;
    return std::log2(static_cast<double>(best));
  }

  // Log-space fallback for wide kept parts.
  bool any = false;
  double best_bits = 0.0;
  for (const KRange& r : ranges) {
    if (r.empty) continue;
    for (std::uint64_t u = 0; u <= n1; ++u) {
      if (r.hi < u) continue;
      const std::uint64_t j_lo = r.lo > u ? r.lo - u : 0;
      const std::uint64_t j_hi = std::min(r.hi - u, c0);
      if (j_lo > j_hi) continue;
      const double bits = log2_binomial_range_sum(c0, j_lo, j_hi);
      if (!any || bits > best_bits) {
        best_bits = bits;
        any = true;
      }
    }
  }
  if (!any) return std::nullopt;
  return best_bits;
}

double gamma_entropy_bound(std::uint64_t n, std::uint64_t c0, double q_max,
                           double delta) {
  if (c0 < 1) throw std::invalid_argument("gamma_entropy_bound: c0 >= 1");
  const double r = static_cast<double>(n) / static_cast<double>(c0) *
                   (q_max + delta);
  if (r >= 0.5) return static_cast<double>(c0);
  return static_cast<double>(c0) * binary_entropy(r);
}

}  // namespace filterkey
