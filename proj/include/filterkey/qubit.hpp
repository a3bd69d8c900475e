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

#include <array>
#include <complex>
#include <cstddef>
#include <utility>
#include <vector>

namespace filterkey {

using cd = std::complex<double>;

// Structural tolerance (orthonormality, Hermiticity) and the looser tolerance
// for derived quantities (positivity, square-root residuals).
inline constexpr double kStructTol = 1e-12;
inline constexpr double kDerivedTol = 1e-10;

/// Single-qubit state vector.
struct CVec2 {
  cd v[2]{0.0, 0.0};

  CVec2() = default;
  CVec2(cd a, cd b) : v{a, b} {}

  double norm() const;
  CVec2 normalized() const;  // throws on the zero vector
};

/// <u|w>, conjugate-linear in the first argument.
cd inner(const CVec2& u, const CVec2& w);

/// 2x2 complex operator.
struct Op2 {
  cd m[2][2]{{0.0, 0.0}, {0.0, 0.0}};

  static Op2 identity();
  static Op2 zero();
  /// |v><v|
  static Op2 outer(const CVec2& v);

  Op2 operator+(const Op2& o) const;
  Op2 operator-(const Op2& o) const;
  Op2 operator*(const Op2& o) const;
  Op2 adjoint() const;
  CVec2 apply(const CVec2& x) const;
  cd trace() const;
  bool is_hermitian(double tol = kStructTol) const;
};

Op2 operator*(cd s, const Op2& a);
double frobenius_norm(const Op2& a);

/// Eigen-decomposition of a Hermitian 2x2 operator, eigenvalues ascending,
/// eigenvectors orthonormal.  Closed form; throws on non-Hermitian input.
struct EigenSystem2 {
  double eval[2];
  CVec2 evec[2];
};
EigenSystem2 eigensolve_hermitian(const Op2& a);

/// Hermitian PSD square root via eigen-decomposition.  Eigenvalues below
/// -kDerivedTol are an error; small negatives inside the tolerance clamp to 0.
Op2 sqrt_psd(const Op2& a);

/// Orthonormal single-qubit basis.
struct Basis2 {
  CVec2 e[2];

  static Basis2 Z();
  static Basis2 X();
  /// Plane rotation of Z by angle phi: e0 = cos(phi)|0> + sin(phi)|1>.
  static Basis2 rotated(double phi);

  bool is_orthonormal(double tol = kStructTol) const;
};

/// Overlap constant between a filter-output basis and the key basis, in bits:
/// -log2 max_{i,j} |<a_i|b_j>|^2.  Mutually unbiased bases give 1 bit.
/// Throws when either basis fails the orthonormality tolerance.
double basis_overlap_bits(const Basis2& a, const Basis2& b);

/// Scalars lambda(k) with F|m_k> = lambda(k)|mtilde_k>.
struct FilterScalars {
  cd lambda[2];
};

/// Check the filter alignment hypothesis: F must map each element of M onto
/// the corresponding element of Mtilde up to a complex scale.  Returns the
/// scales; throws std::runtime_error naming the offending basis index when a
/// residual exceeds tol or a |lambda|^2 leaves [0, 1+tol].
FilterScalars check_filter_relation(const Op2& f, const Basis2& m,
                                    const Basis2& mtilde, double tol);

/// Exact guessing min-entropy of a binary classical-quantum ensemble, from
/// the optimal two-hypothesis discrimination probability
///   p_guess = (1 + ||p0 rho0 - p1 rho1||_1) / 2.
/// Inputs are validated as densities (Hermitian, PSD, unit trace).
double helstrom_min_entropy(double p0, const Op2& rho0, double p1,
                            const Op2& rho1);

/// Desk-scale check of the support-size entropy bound H >= c_bits - log2|J|:
/// builds the equal-amplitude pure state sum_a |m_a>|E_a> over a <= 2 basis
/// directions of M, measures the first qubit in Z, and compares the exact
/// min-entropy of the outcome given the side register against the bound.
struct SupportBoundCheck {
  double lhs = 0.0;   // exact min-entropy, bits
  double rhs = 0.0;   // c_bits - log2 |J|
  bool holds = false; // lhs >= rhs - 1e-9
};
SupportBoundCheck check_support_entropy_bound(
    std::size_t j_size, const std::vector<CVec2>& e_states, const Basis2& m);

/// 4x4 complex operator over qubits A (x) B; also used for the two-qubit
/// density matrices it validates.
struct State4 {
  cd m[4][4]{};

  /// |psi><psi| from amplitudes ordered |00>,|01>,|10>,|11> (A first).
  static State4 from_pure(const std::array<cd, 4>& psi);

  State4 operator+(const State4& o) const;
  State4 operator-(const State4& o) const;
  cd trace() const;
  bool is_hermitian(double tol = kStructTol) const;

  /// Throws unless Hermitian, PSD and unit-trace within tol.
  void validate_density(double tol = kDerivedTol) const;
};

State4 operator*(cd s, const State4& a);
State4 kron(const Op2& a, const Op2& b);

Op2 partial_trace_A(const State4& rho);
Op2 partial_trace_B(const State4& rho);

/// tr[(opA (x) opB) rho]
cd expect(const State4& rho, const Op2& opA, const Op2& opB);

/// (I (x) k) rho (I (x) k)^dagger
State4 conjugate_on_B(const State4& rho, const Op2& k);

/// Project qubit A onto |a>: returns (probability, unnormalized B block
/// <a| rho |a>).  Normalizing the block by the probability gives the
/// conditional state of B.
std::pair<double, Op2> project_A(const State4& rho, const CVec2& a);

/// Eigenvalues of a Hermitian 4x4 operator, ascending, by cyclic Jacobi.
std::array<double, 4> eigenvalues_hermitian4(const State4& a);

}  // namespace filterkey
