// Copyright 2026 The lindblad Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <algorithm>
#include <cmath>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include <unsupported/Eigen/KroneckerProduct>

#include "lindblad/su_basis.hpp"

namespace lindblad {

// ---------------------------------------------------------------------------
// Vectorization, |psi><phi| -> |phi> (x) |psi>  (column stacking).
// ---------------------------------------------------------------------------

inline VectorizedState vectorize(const CMatrix& rho) {
  if (rho.rows() != rho.cols()) throw InvalidDimension("vectorize: matrix must be square");
  return Eigen::Map<const CVector>(rho.data(), rho.size());
}

inline int level_count_of(Eigen::Index vectorized_size) {
  const auto n = static_cast<int>(std::lround(std::sqrt(static_cast<double>(vectorized_size))));
  if (static_cast<Eigen::Index>(n) * n != vectorized_size)
    throw InvalidDimension("vectorized length " + std::to_string(vectorized_size) + " is not a square");
  return n;
}

inline CMatrix devectorize(const VectorizedState& v) {
  const int n = level_count_of(v.size());
  return Eigen::Map<const CMatrix>(v.data(), n, n);
}

inline CMatrix kron(const CMatrix& a, const CMatrix& b) { return Eigen::kroneckerProduct(a, b).eval(); }

/// vec(I_n)^dagger; trace preservation of a superoperator S reads trace_row(n) * S == 0.
inline Eigen::RowVectorXcd trace_row(int n) { return vectorize(CMatrix::Identity(n, n)).adjoint(); }

/// -i [H, .] as a superoperator.
inline Superoperator hamiltonian_superop(const CMatrix& h) {
  const auto n = h.rows();
  const CMatrix id = CMatrix::Identity(n, n);
  return -kI * (kron(id, h) - kron(h.transpose(), id));
}

/// L . L^dagger - 1/2 {L^dagger L, .} as a superoperator.
inline Superoperator jump_dissipator(const CMatrix& l) {
  const auto n = l.rows();
  const CMatrix id = CMatrix::Identity(n, n);
  const CMatrix ldl = l.adjoint() * l;
  return kron(l.conjugate(), l) - 0.5 * kron(id, ldl) - 0.5 * kron(ldl.transpose(), id);
}

// ---------------------------------------------------------------------------
// Superoperator basis {H_j, D_kl}.
// ---------------------------------------------------------------------------

/// H_j = -i (I (x) F_j - F_j^* (x) I), j in 1..n^2-1.
inline Superoperator build_superop_H(const OperatorBasis& basis, int j) {
  if (j < 1 || j > basis.generator_count()) throw IndexOutOfRange("build_superop_H: index out of range");
  const CMatrix id = CMatrix::Identity(basis.n, basis.n);
  return -kI * (kron(id, basis[j]) - kron(basis[j].conjugate(), id));
}

/// D_kl = F_l^* (x) F_k - 1/2 I (x) F_l F_k - 1/2 F_k^* F_l^* (x) I, k, l in 1..n^2-1.
inline Superoperator build_superop_D(const OperatorBasis& basis, int k, int l) {
  const int m = basis.generator_count();
  if (k < 1 || l < 1 || k > m || l > m) throw IndexOutOfRange("build_superop_D: index out of range");
  const CMatrix id = CMatrix::Identity(basis.n, basis.n);
  return kron(basis[l].conjugate(), basis[k]) - 0.5 * kron(id, basis[l] * basis[k]) -
         0.5 * kron(basis[k].conjugate() * basis[l].conjugate(), id);
}

/// Operator basis plus the cached superoperator basis for one level count.
class LiouvilleSpace {
 public:
  explicit LiouvilleSpace(int n) : basis_(build_su_basis(n)) {
    const int m = basis_.generator_count();
    h_.reserve(static_cast<std::size_t>(m));
    d_.reserve(static_cast<std::size_t>(m) * m);
    for (int j = 1; j <= m; ++j) h_.push_back(build_superop_H(basis_, j));
    for (int k = 1; k <= m; ++k)
      for (int l = 1; l <= m; ++l) d_.push_back(build_superop_D(basis_, k, l));
  }

  int n() const noexcept { return basis_.n; }
  int generator_count() const noexcept { return basis_.generator_count(); }
  int dim() const noexcept { return basis_.n * basis_.n; }
  const OperatorBasis& basis() const noexcept { return basis_; }

  const Superoperator& H(int j) const { return h_.at(static_cast<std::size_t>(j - 1)); }
  const Superoperator& D(int k, int l) const {
    const int m = generator_count();
    return d_.at(static_cast<std::size_t>((k - 1) * m + (l - 1)));
  }

 private:
  OperatorBasis basis_;
  std::vector<Superoperator> h_;
  std::vector<Superoperator> d_;
};

inline std::shared_ptr<const LiouvilleSpace> make_liouville_space(int n) {
  return std::make_shared<const LiouvilleSpace>(n);
}

// ---------------------------------------------------------------------------
// Time-dependent Liouvillian specifications.
// ---------------------------------------------------------------------------

/**
 * L_t = sum_j h_j(t) H_j + sum_kl gamma_kl(t) D_kl.
 *
 * `hamiltonian` returns the real h_1..h_{n^2-1} (angular frequency) and
 * `dissipation` the hermitian PSD gamma matrix (rate). `breakpoints` lists the
 * times where the coefficient functions have corners or jumps; when `period`
 * is set they are offsets within one period and repeat.
 */
struct LiouvillianSpec {
  std::shared_ptr<const LiouvilleSpace> space;
  std::function<RVector(double)> hamiltonian;
  std::function<CMatrix(double)> dissipation;
  std::vector<double> breakpoints;
  std::optional<double> period;

  int n() const { return space->n(); }
};

struct Jump {
  CMatrix op;
  ScalarFn rate;
};

/// Jump-operator form: H(t) plus {(L_j, Gamma_j(t) >= 0)}.
struct JumpSpec {
  int n = 0;
  std::function<CMatrix(double)> hamiltonian;
  std::vector<Jump> jumps;
  std::vector<double> breakpoints;
  std::optional<double> period;
};

/// Interior breakpoints of the spec inside the open interval (t0, t1), sorted.
inline std::vector<double> breakpoints_between(const std::vector<double>& marks, std::optional<double> period,
                                               double t0, double t1) {
  std::vector<double> out;
  if (t1 <= t0) return out;
  if (!period) {
    for (double b : marks)
      if (b > t0 && b < t1) out.push_back(b);
  } else {
    const double p = *period;
    const double first = std::floor(t0 / p);
    const double last = std::ceil(t1 / p);
    for (double c = first; c <= last; c += 1.0) {
      for (double b : marks) {
        const double t = c * p + b;
        if (t > t0 && t < t1) out.push_back(t);
      }
    }
  }
  std::sort(out.begin(), out.end());
  // Drop near-duplicates produced by marks at 0 and at the period.
  std::vector<double> unique;
  for (double b : out)
    if (unique.empty() || b - unique.back() > 1e-12 * std::max(1.0, std::abs(b))) unique.push_back(b);
  return unique;
}

inline std::vector<double> breakpoints_between(const LiouvillianSpec& spec, double t0, double t1) {
  return breakpoints_between(spec.breakpoints, spec.period, t0, t1);
}

inline double hermiticity_deviation(const CMatrix& m) { return (m - m.adjoint()).cwiseAbs().maxCoeff(); }

inline Superoperator assemble(const LiouvillianSpec& spec, double t) {
  const LiouvilleSpace& space = *spec.space;
  const int m = space.generator_count();
  Superoperator out = Superoperator::Zero(space.dim(), space.dim());
  if (spec.hamiltonian) {
    const RVector h = spec.hamiltonian(t);
    if (h.size() != m) throw InvalidDimension("assemble: hamiltonian coefficient count mismatch");
    for (int j = 1; j <= m; ++j)
      if (h(j - 1) != 0.0) out.noalias() += h(j - 1) * space.H(j);
  }
  if (spec.dissipation) {
    const CMatrix g = spec.dissipation(t);
    if (g.rows() != m || g.cols() != m) throw InvalidDimension("assemble: dissipation matrix shape mismatch");
    if (hermiticity_deviation(g) > 1e-10)
      throw InvalidSpec("assemble: dissipation matrix is not hermitian at t = " + std::to_string(t), t);
    for (int k = 1; k <= m; ++k)
      for (int l = 1; l <= m; ++l)
        if (g(k - 1, l - 1) != Complex{}) out.noalias() += g(k - 1, l - 1) * space.D(k, l);
  }
  return out;
}

/// Checks gamma(t) hermitian and PSD (eigenvalue floor -1e-10) at each sampled time.
inline void validate_spec(const LiouvillianSpec& spec, const std::vector<double>& times) {
  for (double t : times) {
    if (!spec.dissipation) break;
    const CMatrix g = spec.dissipation(t);
    if (hermiticity_deviation(g) > 1e-10)
      throw InvalidSpec("dissipation matrix is not hermitian at t = " + std::to_string(t), t);
    const CMatrix herm = 0.5 * (g + g.adjoint());
    Eigen::SelfAdjointEigenSolver<CMatrix> es(herm, Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < -1e-10)
      throw InvalidSpec("dissipation matrix is not positive semidefinite at t = " + std::to_string(t), t);
  }
}

/**
 * Expands H(t) and the jumps in the operator basis. A jump L = a I + L'
 * contributes gamma_kl = Gamma c_k c_l^* from L' and the hamiltonian
 * (i/2)(a^* L' - a L'^dagger) from its identity component.
 */
inline LiouvillianSpec jump_to_coefficients(const JumpSpec& js, std::shared_ptr<const LiouvilleSpace> space) {
  if (!space || space->n() != js.n) throw InvalidDimension("jump_to_coefficients: level count mismatch");
  const OperatorBasis& basis = space->basis();
  const int m = basis.generator_count();
  const int n = js.n;

  struct Expanded {
    CVector c;      // generator coefficients c_1..c_m
    RVector h_id;   // hamiltonian coefficients induced by the identity component
    ScalarFn rate;
  };
  std::vector<Expanded> expanded;
  for (const Jump& jump : js.jumps) {
    if (jump.op.rows() != n || jump.op.cols() != n) throw InvalidDimension("jump_to_coefficients: jump operator shape");
    const CVector all = expand_in_basis(basis, jump.op);
    Expanded e;
    e.c = all.tail(m);
    e.rate = jump.rate;
    const Complex a = all(0) / std::sqrt(static_cast<double>(n));
    const CMatrix traceless = jump.op - a * CMatrix::Identity(n, n);
    const CMatrix h_extra = 0.5 * kI * (std::conj(a) * traceless - a * traceless.adjoint());
    e.h_id = RVector(m);
    for (int k = 1; k <= m; ++k) e.h_id(k - 1) = (h_extra * basis[k]).trace().real();
    expanded.push_back(std::move(e));
  }

  LiouvillianSpec spec;
  spec.space = space;
  spec.breakpoints = js.breakpoints;
  spec.period = js.period;
  auto ham = js.hamiltonian;
  spec.hamiltonian = [space, ham, expanded, m](double t) {
    RVector h = RVector::Zero(m);
    if (ham) {
      const CMatrix ht = ham(t);
      for (int k = 1; k <= m; ++k) h(k - 1) = (ht * space->basis()[k]).trace().real();
    }
    for (const auto& e : expanded) {
      const double g = e.rate(t);
      if (g != 0.0 && e.h_id.squaredNorm() > 0.0) h += g * e.h_id;
    }
    return h;
  };
  spec.dissipation = [expanded, m](double t) {
    CMatrix g = CMatrix::Zero(m, m);
    for (const auto& e : expanded) {
      const double rate = e.rate(t);
      if (rate != 0.0) g.noalias() += rate * (e.c * e.c.adjoint());
    }
    return g;
  };
  return spec;
}

/// Coefficients (h, gamma) of L in the superoperator basis, by least squares.
struct SuperopCoordinates {
  CVector h;
  CMatrix gamma;
  double residual = 0.0;
};

inline SuperopCoordinates project_onto_superop_basis(const LiouvilleSpace& space, const Superoperator& l) {
  const int m = space.generator_count();
  const int d = space.dim();
  CMatrix design(static_cast<Eigen::Index>(d) * d, m + m * m);
  int col = 0;
  for (int j = 1; j <= m; ++j) design.col(col++) = Eigen::Map<const CVector>(space.H(j).data(), d * d);
  for (int k = 1; k <= m; ++k)
    for (int q = 1; q <= m; ++q) design.col(col++) = Eigen::Map<const CVector>(space.D(k, q).data(), d * d);
  const CVector target = Eigen::Map<const CVector>(l.data(), d * d);
  const CVector x = design.colPivHouseholderQr().solve(target);
  SuperopCoordinates out;
  out.h = x.head(m);
  out.gamma = Eigen::Map<const CMatrix>(x.data() + m, m, m).transpose();
  out.residual = (design * x - target).cwiseAbs().maxCoeff();
  return out;
}

// ---------------------------------------------------------------------------
// Dissipators acting on matrices.
// ---------------------------------------------------------------------------

/// sum_kl gamma_kl (F_k rho F_l - 1/2 {F_l F_k, rho}).
inline CMatrix dissipator_action(const OperatorBasis& basis, const CMatrix& gamma, const CMatrix& rho) {
  const int m = basis.generator_count();
  CMatrix out = CMatrix::Zero(basis.n, basis.n);
  for (int k = 1; k <= m; ++k)
    for (int l = 1; l <= m; ++l) {
      const Complex g = gamma(k - 1, l - 1);
      if (g == Complex{}) continue;
      const CMatrix lk = basis[l] * basis[k];
      out += g * (basis[k] * rho * basis[l] - 0.5 * (lk * rho + rho * lk));
    }
  return out;
}

/// Heisenberg-picture dual: sum_kl gamma_kl (F_l^dagger X F_k - 1/2 {F_l^dagger F_k, X}).
inline CMatrix dual_dissipator(const OperatorBasis& basis, const CMatrix& gamma, const CMatrix& x) {
  const int m = basis.generator_count();
  CMatrix out = CMatrix::Zero(basis.n, basis.n);
  for (int k = 1; k <= m; ++k)
    for (int l = 1; l <= m; ++l) {
      const Complex g = gamma(k - 1, l - 1);
      if (g == Complex{}) continue;
      const CMatrix ldk = basis[l].adjoint() * basis[k];
      out += g * (basis[l].adjoint() * x * basis[k] - 0.5 * (ldk * x + x * ldk));
    }
  return out;
}

/// tr(rho D*_t(X)).
inline Complex dual_dissipator_expectation(const LiouvillianSpec& spec, const CMatrix& rho, const CMatrix& x,
                                           double t) {
  const int n = spec.n();
  if (rho.rows() != n || rho.cols() != n || x.rows() != n || x.cols() != n)
    throw InvalidDimension("dual_dissipator_expectation: dimension mismatch");
  if (!spec.dissipation) return {};
  return (rho * dual_dissipator(spec.space->basis(), spec.dissipation(t), x)).trace();
}

// ---------------------------------------------------------------------------
// Numerical verification of the superoperator commutator algebra.
// ---------------------------------------------------------------------------

struct AlgebraReport {
  int n = 0;
  double max_hh = 0.0;  // [H_i, H_j] = sum_k f_ijk H_k
  double max_hd = 0.0;  // [H_j, D_kl] = sum_s (f_jks D_sl + f_jls D_ks)
  double max_dd = 0.0;  // [D_kl, D_qm] closed form in H and D
  int tuples_checked = 0;
  double max_deviation() const { return std::max({max_hh, max_hd, max_dd}); }
};

namespace detail {
inline Superoperator commutator(const CMatrix& a, const CMatrix& b) { return a * b - b * a; }
}  // namespace detail

/// Right-hand side of [D_kl, D_qm] expanded in the superoperator basis.
inline Superoperator dd_commutator_rhs(const LiouvilleSpace& space, const StructureTensors& t, int k, int l, int q,
                                       int mm) {
  const int m = space.generator_count();
  const int n = space.n();
  Superoperator rhs = Superoperator::Zero(space.dim(), space.dim());
  for (int r = 1; r <= m; ++r) {
    Complex coeff{};
    for (int s = 1; s <= m; ++s)
      for (int p = 1; p <= m; ++p) coeff += t.z(l, k, s) * t.z(mm, q, p) * t.f(s, p, r);
    coeff /= 16.0;
    for (int s = 1; s <= m; ++s)
      coeff += (1.0 / (2.0 * n)) * ((q == k ? t.f(mm, l, s) : 0.0) - (l == mm ? t.f(k, q, s) : 0.0)) * (s == r ? 1.0 : 0.0);
    if (coeff != Complex{}) rhs += coeff * space.H(r);
  }
  for (int s = 1; s <= m; ++s)
    for (int p = 1; p <= m; ++p) {
      rhs += 0.25 * t.z(mm, q, s) * (t.f(k, s, p) * space.D(p, l) + t.f(s, l, p) * space.D(k, p));
      rhs += 0.25 * t.z(l, k, s) * (t.f(s, q, p) * space.D(p, mm) + t.f(mm, s, p) * space.D(q, p));
      rhs += 0.25 * (t.z(q, k, s) * t.z(l, mm, p) - t.z(k, q, s) * t.z(mm, l, p)) * space.D(s, p);
    }
  return rhs;
}

/**
 * Compares matrix commutators of the superoperator basis with their closed
 * forms. [H,H] is checked exhaustively; [H,D] and [D,D] exhaustively when the
 * tuple count is at most `samples`, otherwise on `samples` random tuples.
 */
inline AlgebraReport verify_algebra(const LiouvilleSpace& space, const StructureTensors& t, int samples = 50,
                                    std::uint64_t seed = 20260101) {
  using detail::commutator;
  const int m = space.generator_count();
  AlgebraReport rep;
  rep.n = space.n();
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> pick(1, m);

  for (int i = 1; i <= m; ++i)
    for (int j = 1; j <= m; ++j) {
      Superoperator rhs = Superoperator::Zero(space.dim(), space.dim());
      for (int k = 1; k <= m; ++k) rhs += t.f(i, j, k) * space.H(k);
      rep.max_hh = std::max(rep.max_hh, (commutator(space.H(i), space.H(j)) - rhs).cwiseAbs().maxCoeff());
      ++rep.tuples_checked;
    }

  auto check_hd = [&](int j, int k, int l) {
    Superoperator rhs = Superoperator::Zero(space.dim(), space.dim());
    for (int s = 1; s <= m; ++s) rhs += t.f(j, k, s) * space.D(s, l) + t.f(j, l, s) * space.D(k, s);
    rep.max_hd = std::max(rep.max_hd, (commutator(space.H(j), space.D(k, l)) - rhs).cwiseAbs().maxCoeff());
    ++rep.tuples_checked;
  };
  if (m * m * m <= samples) {
    for (int j = 1; j <= m; ++j)
      for (int k = 1; k <= m; ++k)
        for (int l = 1; l <= m; ++l) check_hd(j, k, l);
  } else {
    for (int s = 0; s < samples; ++s) check_hd(pick(rng), pick(rng), pick(rng));
  }

  auto check_dd = [&](int k, int l, int q, int mm) {
    const Superoperator lhs = commutator(space.D(k, l), space.D(q, mm));
    rep.max_dd = std::max(rep.max_dd, (lhs - dd_commutator_rhs(space, t, k, l, q, mm)).cwiseAbs().maxCoeff());
    ++rep.tuples_checked;
  };
  if (m * m * m * m <= std::max(samples, 81)) {
    for (int k = 1; k <= m; ++k)
      for (int l = 1; l <= m; ++l)
        for (int q = 1; q <= m; ++q)
          for (int mm = 1; mm <= m; ++mm) check_dd(k, l, q, mm);
  } else {
    for (int s = 0; s < samples; ++s) check_dd(pick(rng), pick(rng), pick(rng), pick(rng));
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Qubit conveniences.
// ---------------------------------------------------------------------------

namespace pauli {
inline CMatrix identity() { return CMatrix::Identity(2, 2); }
inline CMatrix x() { CMatrix m(2, 2); m << 0, 1, 1, 0; return m; }
inline CMatrix y() { CMatrix m(2, 2); m << 0, -kI, kI, 0; return m; }
inline CMatrix z() { CMatrix m(2, 2); m << 1, 0, 0, -1; return m; }
/// sigma_+ = (sigma_1 + i sigma_2)/2 = |up><down| with |up> = e_1.
inline CMatrix plus() { CMatrix m(2, 2); m << 0, 1, 0, 0; return m; }
inline CMatrix minus() { CMatrix m(2, 2); m << 0, 0, 1, 0; return m; }
}  // namespace pauli

/**
 * The closed qubit subalgebra {H_3, D_up, D_down, D_33}. D_up and D_down are
 * the vectorized dissipators of sigma_+ and sigma_-; they satisfy
 * [D_up, D_down] = D_up - D_down and commute with H_3 and D_33.
 */
struct QubitOperators {
  std::shared_ptr<const LiouvilleSpace> space;
  Superoperator H3;
  Superoperator D_up;
  Superoperator D_down;
  Superoperator D33;
};

inline const QubitOperators& qubit_operators() {
  static const QubitOperators ops = [] {
    QubitOperators o;
    o.space = make_liouville_space(2);
    o.H3 = o.space->H(3);
    o.D_up = jump_dissipator(pauli::plus());
    o.D_down = jump_dissipator(pauli::minus());
    o.D33 = o.space->D(3, 3);
    return o;
  }();
  return ops;
}

/// -Omega/sqrt2 H_3 + Gamma_+ D_up + Gamma_- D_down + 2 Gamma_3 D_33.
inline Superoperator qubit_liouvillian(double omega, double gamma_plus, double gamma_minus, double gamma3 = 0.0) {
  const auto& q = qubit_operators();
  return -omega / std::sqrt(2.0) * q.H3 + gamma_plus * q.D_up + gamma_minus * q.D_down + 2.0 * gamma3 * q.D33;
}

}  // namespace lindblad
