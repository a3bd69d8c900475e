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

#include "filterkey/qubit.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace filterkey {

double CVec2::norm() const {
  return std::sqrt(std::norm(v[0]) + std::norm(v[1]));
}

CVec2 CVec2::normalized() const {
  const double n = norm();
  if (n < 1e-300) throw std::domain_error("cannot normalize the zero vector");
  return {v[0] / n, v[1] / n};
}

cd inner(const CVec2& u, const CVec2& w) {
  return std::conj(u.v[0]) * w.v[0] + std::conj(u.v[1]) * w.v[1];
}

Op2 Op2::identity() {
  Op2 a;
  a.m[0][0] = 1.0;
  a.m[1][1] = 1.0;
  return a;
}

Op2 Op2::zero() { return {}; }

Op2 Op2::outer(const CVec2& v) {
  Op2 a;
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) a.m[i][j] = v.v[i] * std::conj(v.v[j]);
  }
  return a;
}

Op2 Op2::operator+(const Op2& o) const {
  Op2 r;
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) r.m[i][j] = m[i][j] + o.m[i][j];
  }
  return r;
}

Op2 Op2::operator-(const Op2& o) const {
  Op2 r;
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) r.m[i][j] = m[i][j] - o.m[i][j];
  }
  return r;
}

Op2 Op2::operator*(const Op2& o) const {
  Op2 r;
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      r.m[i][j] = m[i][0] * o.m[0][j] + m[i][1] * o.m[1][j];
    }
  }
  return r;
}

Op2 Op2::adjoint() const {
  Op2 r;
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) r.m[i][j] = std::conj(m[j][i]);
  }
  return r;
}

CVec2 Op2::apply(const CVec2& x) const {
  return {m[0][0] * x.v[0] + m[0][1] * x.v[1],
          m[1][0] * x.v[0] + m[1][1] * x.v[1]};
}

cd Op2::trace() const { return m[0][0] + m[1][1]; }

bool Op2::is_hermitian(double tol) const {
  return std::abs(m[0][0] - std::conj(m[0][0])) <= tol &&
         std::abs(m[1][1] - std::conj(m[1][1])) <= tol &&
         std::abs(m[0][1] - std::conj(m[1][0])) <= tol;
}

Op2 operator*(cd s, const Op2& a) {
  Op2 r;
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) r.m[i][j] = s * a.m[i][j];
  }
  return r;
}

double frobenius_norm(const Op2& a) {
  double s = 0.0;
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) s += std::norm(a.m[i][j]);
  }
  return std::sqrt(s);
}

EigenSystem2 eigensolve_hermitian(const Op2& a) {
  if (!a.is_hermitian()) {
    throw std::invalid_argument("eigensolve_hermitian: matrix not Hermitian");
  }
  const double p = a.m[0][0].real();
  const double q = a.m[1][1].real();
  const cd b = a.m[0][1];
  const double half_diff = 0.5 * (p - q);
  const double disc = std::sqrt(half_diff * half_diff + std::norm(b));
  const double mean = 0.5 * (p + q);

  EigenSystem2 es;
  es.eval[0] = mean - disc;
  es.eval[1] = mean + disc;

  if (disc <= 1e-300) {
    // Scalar multiple of the identity: any orthonormal pair works.
    es.evec[0] = {1.0, 0.0};
    es.evec[1] = {0.0, 1.0};
    return es;
  }
  // Eigenvector for the top eigenvalue.  lam1 - p and lam1 - q are formed
  // analytically as half-gap + disc so no cancellation occurs (subtracting
  // the rounded eigenvalue loses all direction information when disc sits at
  // rounding scale); of the two equivalent forms, the larger is the well
  // conditioned one.  The other eigenvector is the exact orthogonal
  // complement, which keeps the pair orthonormal even for a near-degenerate
  // spectrum, where any direction is admissible but orthogonality is not
  // optional.
  const CVec2 c1{b, cd(0.5 * (q - p) + disc, 0.0)};
  const CVec2 c2{cd(0.5 * (p - q) + disc, 0.0), std::conj(b)};
  es.evec[1] = (c1.norm() >= c2.norm() ? c1 : c2).normalized();
  es.evec[0] = {-std::conj(es.evec[1].v[1]), std::conj(es.evec[1].v[0])};
  return es;
}

Op2 sqrt_psd(const Op2& a) {
  const EigenSystem2 es = eigensolve_hermitian(a);
  for (double lam : es.eval) {
    if (lam < -kDerivedTol) {
      std::ostringstream msg;
      msg << "sqrt_psd: eigenvalue " << lam << " is negative";
      throw std::domain_error(msg.str());
    }
  }
  Op2 r;
  for (int k = 0; k < 2; ++k) {
    const double lam = es.eval[k] > 0.0 ? es.eval[k] : 0.0;
    r = r + cd(std::sqrt(lam), 0.0) * Op2::outer(es.evec[k]);
  }
  return r;
}

Basis2 Basis2::Z() { return {{CVec2{1.0, 0.0}, CVec2{0.0, 1.0}}}; }

Basis2 Basis2::X() {
  const double s = 1.0 / std::sqrt(2.0);
  return {{CVec2{s, s}, CVec2{s, -s}}};
}

Basis2 Basis2::rotated(double phi) {
  const double c = std::cos(phi), s = std::sin(phi);
  return {{CVec2{c, s}, CVec2{-s, c}}};
}

bool Basis2::is_orthonormal(double tol) const {
  return std::fabs(e[0].norm() - 1.0) <= tol &&
         std::fabs(e[1].norm() - 1.0) <= tol &&
         std::abs(inner(e[0], e[1])) <= tol;
}

double basis_overlap_bits(const Basis2& a, const Basis2& b) {
  if (!a.is_orthonormal() || !b.is_orthonormal()) {
    throw std::invalid_argument("basis_overlap_bits: bases must be orthonormal");
  }
  double best = 0.0;
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      best = std::max(best, std::norm(inner(a.e[i], b.e[j])));
    }
  }
  return -std::log2(best);
}

FilterScalars check_filter_relation(const Op2& f, const Basis2& m,
                                    const Basis2& mtilde, double tol) {
  if (!(tol > 0.0)) {
    throw std::invalid_argument("check_filter_relation: tol must be positive");
  }
  if (!m.is_orthonormal() || !mtilde.is_orthonormal()) {
    throw std::invalid_argument("check_filter_relation: bases not orthonormal");
  }
  FilterScalars out;
  for (int k = 0; k < 2; ++k) {
    const CVec2 w = f.apply(m.e[k]);
    const cd lam = inner(mtilde.e[k], w);
    const CVec2 resid{w.v[0] - lam * mtilde.e[k].v[0],
                      w.v[1] - lam * mtilde.e[k].v[1]};
    if (resid.norm() > tol) {
      std::ostringstream msg;
      msg << "filter relation violated for basis state k=" << k
          << ": residual " << resid.norm() << " exceeds " << tol;
      throw std::runtime_error(msg.str());
    }
    const double prob = std::norm(lam);
    if (prob > 1.0 + tol) {
      std::ostringstream msg;
      msg << "filter relation violated for basis state k=" << k
          << ": |lambda|^2 = " << prob << " exceeds 1";
      throw std::runtime_error(msg.str());
    }
    out.lambda[k] = lam;
  }
  return out;
}

namespace {

void validate_density2(const Op2& rho, const char* who) {
  if (!rho.is_hermitian()) {
    throw std::invalid_argument(std::string(who) + ": not Hermitian");
  }
  if (std::fabs(rho.trace().real() - 1.0) > kDerivedTol) {
    throw std::invalid_argument(std::string(who) + ": trace is not 1");
  }
  const EigenSystem2 es = eigensolve_hermitian(rho);
  if (es.eval[0] < -kDerivedTol) {
    throw std::invalid_argument(std::string(who) + ": negative eigenvalue");
  }
}

}  // namespace

double helstrom_min_entropy(double p0, const Op2& rho0, double p1,
                            const Op2& rho1) {
  if (!(p0 >= 0.0 && p1 >= 0.0) || std::fabs(p0 + p1 - 1.0) > kStructTol) {
    throw std::invalid_argument(
        "helstrom_min_entropy: priors must be a distribution");
  }
  validate_density2(rho0, "helstrom_min_entropy rho0");
  validate_density2(rho1, "helstrom_min_entropy rho1");
  const Op2 diff = cd(p0, 0.0) * rho0 - cd(p1, 0.0) * rho1;
  const EigenSystem2 es = eigensolve_hermitian(diff);
  const double trace_norm = std::fabs(es.eval[0]) + std::fabs(es.eval[1]);
  const double p_guess = 0.5 * (1.0 + trace_norm);
  return -std::log2(p_guess);
}

SupportBoundCheck check_support_entropy_bound(
    std::size_t j_size, const std::vector<CVec2>& e_states, const Basis2& m) {
  if (j_size < 1 || j_size > 2) {
    throw std::invalid_argument(
        "check_support_entropy_bound: only |J| in {1,2} is supported");
  }
  if (e_states.size() != j_size) {
    throw std::invalid_argument(
        "check_support_entropy_bound: one side state per support index");
  }
  if (!m.is_orthonormal()) {
    throw std::invalid_argument("check_support_entropy_bound: basis not "
                                "orthonormal");
  }
  // Equal-amplitude pure state over the support, side register in tow.
  std::array<cd, 4> psi{};
  const double amp = 1.0 / std::sqrt(static_cast<double>(j_size));
  for (std::size_t a = 0; a < j_size; ++a) {
    const CVec2 e = e_states[a].normalized();
    for (int i = 0; i < 2; ++i) {
      for (int k = 0; k < 2; ++k) {
        psi[2 * i + k] += amp * m.e[a].v[i] * e.v[k];
      }
    }
  }
  double nrm = 0.0;
  for (const cd& c : psi) nrm += std::norm(c);
  nrm = std::sqrt(nrm);
  for (cd& c : psi) c /= nrm;

  const State4 rho = State4::from_pure(psi);
  const Basis2 z = Basis2::Z();
  double p[2];
  Op2 cond[2];
  for (int zo = 0; zo < 2; ++zo) {
    auto [prob, block] = project_A(rho, z.e[zo]);
    p[zo] = prob;
    if (prob > 1e-15) {
      cond[zo] = cd(1.0 / prob, 0.0) * block;
    } else {
      p[zo] = 0.0;
      cond[zo] = cd(0.5, 0.0) * Op2::identity();  // weight-zero placeholder
    }
  }
  // Guard against tiny negative fp noise in the probabilities.
  const double total = p[0] + p[1];
  p[0] /= total;
  p[1] /= total;

  SupportBoundCheck out;
  out.lhs = helstrom_min_entropy(p[0], cond[0], p[1], cond[1]);
  out.rhs = basis_overlap_bits(m, z) -
            std::log2(static_cast<double>(j_size));
  out.holds = out.lhs >= out.rhs - 1e-9;
  return out;
}

State4 State4::from_pure(const std::array<cd, 4>& psi) {
  State4 r;
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) r.m[i][j] = psi[i] * std::conj(psi[j]);
  }
  return r;
}

State4 State4::operator+(const State4& o) const {
  State4 r;
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) r.m[i][j] = m[i][j] + o.m[i][j];
  }
  return r;
}

State4 State4::operator-(const State4& o) const {
  State4 r;
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) r.m[i][j] = m[i][j] - o.m[i][j];
  }
  return r;
}

cd State4::trace() const { return m[0][0] + m[1][1] + m[2][2] + m[3][3]; }

bool State4::is_hermitian(double tol) const {
  for (int i = 0; i < 4; ++i) {
    for (int j = i; j < 4; ++j) {
      if (std::abs(m[i][j] - std::conj(m[j][i])) > tol) return false;
    }
  }
  return true;
}

void State4::validate_density(double tol) const {
  if (!is_hermitian(tol)) {
    throw std::invalid_argument("State4: not Hermitian");
  }
  if (std::abs(trace() - cd(1.0, 0.0)) > tol) {
    throw std::invalid_argument("State4: trace is not 1");
  }
  const auto ev = eigenvalues_hermitian4(*this);
  if (ev[0] < -tol) {
    std::ostringstream msg;
    msg << "State4: negative eigenvalue " << ev[0];
    throw std::invalid_argument(msg.str());
  }
}

State4 operator*(cd s, const State4& a) {
  State4 r;
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) r.m[i][j] = s * a.m[i][j];
  }
  return r;
}

State4 kron(const Op2& a, const Op2& b) {
  State4 r;
  for (int ia = 0; ia < 2; ++ia) {
    for (int ja = 0; ja < 2; ++ja) {
      for (int ib = 0; ib < 2; ++ib) {
        for (int jb = 0; jb < 2; ++jb) {
          r.m[2 * ia + ib][2 * ja + jb] = a.m[ia][ja] * b.m[ib][jb];
        }
      }
    }
  }
  return r;
}

Op2 partial_trace_A(const State4& rho) {
  Op2 r;
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      r.m[i][j] = rho.m[i][j] + rho.m[2 + i][2 + j];
    }
  }
  return r;
}

Op2 partial_trace_B(const State4& rho) {
  Op2 r;
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      r.m[i][j] = rho.m[2 * i][2 * j] + rho.m[2 * i + 1][2 * j + 1];
    }
  }
  return r;
}

cd expect(const State4& rho, const Op2& opA, const Op2& opB) {
  const State4 k = kron(opA, opB);
  cd s = 0.0;
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) s += k.m[i][j] * rho.m[j][i];
  }
  return s;
}

namespace {

State4 mul4(const State4& a, const State4& b) {
  State4 r;
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      cd s = 0.0;
      for (int k = 0; k < 4; ++k) s += a.m[i][k] * b.m[k][j];
      r.m[i][j] = s;
    }
  }
  return r;
}

State4 adjoint4(const State4& a) {
  State4 r;
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) r.m[i][j] = std::conj(a.m[j][i]);
  }
  return r;
}

}  // namespace

State4 conjugate_on_B(const State4& rho, const Op2& k) {
  const State4 kk = kron(Op2::identity(), k);
  return mul4(mul4(kk, rho), adjoint4(kk));
}

std::pair<double, Op2> project_A(const State4& rho, const CVec2& a) {
  Op2 block;
  for (int ib = 0; ib < 2; ++ib) {
    for (int jb = 0; jb < 2; ++jb) {
      cd s = 0.0;
      for (int ia = 0; ia < 2; ++ia) {
        for (int ja = 0; ja < 2; ++ja) {
          s += std::conj(a.v[ia]) * rho.m[2 * ia + ib][2 * ja + jb] * a.v[ja];
        }
      }
      block.m[ib][jb] = s;
    }
  }
  return {block.trace().real(), block};
}

std::array<double, 4> eigenvalues_hermitian4(const State4& a) {
  if (!a.is_hermitian(1e-9)) {
    throw std::invalid_argument("eigenvalues_hermitian4: not Hermitian");
  }
  State4 w = a;
  // Symmetrize exactly so Jacobi sees a Hermitian input.
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      w.m[i][j] = 0.5 * (w.m[i][j] + std::conj(a.m[j][i]));
    }
  }
  double scale = 0.0;
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) scale = std::max(scale, std::abs(w.m[i][j]));
  }
  if (scale == 0.0) return {0.0, 0.0, 0.0, 0.0};

  for (int sweep = 0; sweep < 60; ++sweep) {
    double off = 0.0;
    for (int i = 0; i < 4; ++i) {
      for (int j = i + 1; j < 4; ++j) off += std::norm(w.m[i][j]);
    }
    if (std::sqrt(off) <= 1e-15 * scale) break;

    for (int p = 0; p < 4; ++p) {
      for (int q = p + 1; q < 4; ++q) {
        const cd apq = w.m[p][q];
        const double r = std::abs(apq);
        if (r <= 1e-18 * scale) continue;
        const double app = w.m[p][p].real();
        const double aqq = w.m[q][q].real();
        const double tau = (aqq - app) / (2.0 * r);
        const double t =
            (tau >= 0.0 ? 1.0 : -1.0) /
            (std::fabs(tau) + std::sqrt(tau * tau + 1.0));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const cd s = t * c * (apq / r);

        State4 g;
        for (int i = 0; i < 4; ++i) g.m[i][i] = 1.0;
        g.m[p][p] = c;
        g.m[q][q] = c;
        g.m[p][q] = s;
        g.m[q][p] = -std::conj(s);
        w = mul4(mul4(adjoint4(g), w), g);
      }
    }
  }
  std::array<double, 4> ev{w.m[0][0].real(), w.m[1][1].real(),
                           w.m[2][2].real(), w.m[3][3].real()};
  std::sort(ev.begin(), ev.end());
  return ev;
}

}  // namespace filterkey
