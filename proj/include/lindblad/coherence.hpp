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

#include <cmath>
#include <memory>
#include <vector>

#include "lindblad/qubit_exact.hpp"

namespace lindblad {

/// v_k = tr(rho F_k), k = 1..n^2-1.
inline RVector coherence_vector(const OperatorBasis& basis, const CMatrix& rho) {
  const int m = basis.generator_count();
  RVector v(m);
  for (int k = 1; k <= m; ++k) v(k - 1) = (rho * basis[k]).trace().real();
  return v;
}

inline CMatrix state_from_coherence(const OperatorBasis& basis, const RVector& v) {
  CMatrix rho = CMatrix::Identity(basis.n, basis.n) / static_cast<double>(basis.n);
  for (int k = 1; k <= basis.generator_count(); ++k) rho += v(k - 1) * basis[k];
  return rho;
}

/**
 * Affine Bloch equation dv/dt = (Q + R) v + k in R^{n^2-1}:
 *   Q_sk = sum_q f_qks h_q
 *   R_sq = -1/4 sum_{i,k,l} gamma_ik (z*_ilq f_kls + z_klq f_ils)
 *   k_s  = (i/n) sum_{i,k} gamma_ik f_iks
 * (R is stored with the row index on the differentiated component.)
 */
class CoherenceSystem {
 public:
  explicit CoherenceSystem(LiouvillianSpec spec)
      : spec_(std::move(spec)),
        tensors_(std::make_shared<const StructureTensors>(structure_constants(spec_.space->basis()))) {
    const int m = generator_count();
    const auto& t = *tensors_;
    // A[(i,k),(s,q)] = sum_l (z*_ilq f_kls + z_klq f_ils)
    contraction_ = CMatrix::Zero(m * m, m * m);
    for (int i = 1; i <= m; ++i)
      for (int k = 1; k <= m; ++k)
        for (int s = 1; s <= m; ++s)
          for (int q = 1; q <= m; ++q) {
            Complex acc{};
            for (int l = 1; l <= m; ++l) acc += std::conj(t.z(i, l, q)) * t.f(k, l, s) + t.z(k, l, q) * t.f(i, l, s);
            contraction_((i - 1) * m + (k - 1), (s - 1) * m + (q - 1)) = acc;
          }
  }

  int n() const { return spec_.n(); }
  int generator_count() const { return spec_.space->generator_count(); }
  const LiouvillianSpec& spec() const { return spec_; }
  const StructureTensors& tensors() const { return *tensors_; }

  RMatrix Q(double t) const {
    const int m = generator_count();
    RMatrix q = RMatrix::Zero(m, m);
    if (!spec_.hamiltonian) return q;
    const RVector h = spec_.hamiltonian(t);
    for (int s = 1; s <= m; ++s)
      for (int k = 1; k <= m; ++k) {
        double acc = 0.0;
        for (int p = 1; p <= m; ++p) acc += tensors_->f(p, k, s) * h(p - 1);
        q(s - 1, k - 1) = acc;
      }
    return q;
  }

  /// Complex R before taking the real part (its imaginary part is a consistency diagnostic).
  CMatrix R_complex(double t) const {
    const int m = generator_count();
    CMatrix r = CMatrix::Zero(m, m);
    if (!spec_.dissipation) return r;
    const CMatrix g = spec_.dissipation(t);
    for (int i = 1; i <= m; ++i)
      for (int k = 1; k <= m; ++k) {
        const Complex gik = g(i - 1, k - 1);
        if (gik == Complex{}) continue;
        const auto row = contraction_.row((i - 1) * m + (k - 1));
        for (int s = 1; s <= m; ++s)
          for (int q = 1; q <= m; ++q) r(s - 1, q - 1) += -0.25 * gik * row((s - 1) * m + (q - 1));
      }
    return r;
  }
  RMatrix R(double t) const { return R_complex(t).real(); }

  CVector k_complex(double t) const {
    const int m = generator_count();
    CVector k = CVector::Zero(m);
    if (!spec_.dissipation) return k;
    const CMatrix g = spec_.dissipation(t);
    for (int s = 1; s <= m; ++s) {
      Complex acc{};
      for (int i = 1; i <= m; ++i)
        for (int kk = 1; kk <= m; ++kk) acc += g(i - 1, kk - 1) * tensors_->f(i, kk, s);
      k(s - 1) = kI / static_cast<double>(n()) * acc;
    }
    return k;
  }
  RVector k(double t) const { return k_complex(t).real(); }

  /// Largest imaginary part among R(t) and k(t) entries.
  double imaginary_residual(double t) const {
    return std::max(R_complex(t).imag().cwiseAbs().maxCoeff(), k_complex(t).imag().cwiseAbs().maxCoeff());
  }

  void derivative(double t, const RVector& v, RVector& dv) const {
    dv.noalias() = (Q(t) + R(t)) * v + k(t);
  }

 private:
  LiouvillianSpec spec_;
  std::shared_ptr<const StructureTensors> tensors_;
  CMatrix contraction_;
};

inline CoherenceSystem build_bloch_system(const LiouvillianSpec& spec) { return CoherenceSystem(spec); }

struct BlochTrajectory {
  std::vector<double> times;
  std::vector<RVector> v;
};

inline BlochTrajectory bloch_evolve(const CoherenceSystem& sys, const RVector& v0, const std::vector<double>& grid,
                                    const IntegratorConfig& cfg = {}) {
  if (v0.size() != sys.generator_count()) throw InvalidDimension("bloch_evolve: coherence vector length mismatch");
  if (grid.empty()) throw InvalidArgument("bloch_evolve: empty grid");
  BlochTrajectory out;
  const double t0 = grid.front();
  integrate([&](double t, const RVector& v, RVector& dv) { sys.derivative(t, v, dv); }, v0, t0, grid,
            breakpoints_between(sys.spec(), t0, grid.back()), cfg, [&](double t, const RVector& v) {
              out.times.push_back(t);
              out.v.push_back(v);
            });
  return out;
}

// ---------------------------------------------------------------------------
// Hand-coded qubit equations in (a, b, rho_11) with rho_12 = a - i b:
//   a'      =  Omega b - (alpha + 2 Gamma_3) a
//   b'      = -Omega a - (alpha + 2 Gamma_3) b
//   rho_11' = (alpha + beta) - 2 alpha rho_11
// alpha = (Gamma_+ + Gamma_-)/2, beta = (Gamma_+ - Gamma_-)/2; v = sqrt2 (a, b, rho_11 - 1/2).
// ---------------------------------------------------------------------------

struct QubitBlochState {
  double a = 0.0;
  double b = 0.0;
  double rho11 = 0.5;

  static QubitBlochState from_rho(const CMatrix& rho) {
    return {rho(0, 1).real(), -rho(0, 1).imag(), rho(0, 0).real()};
  }
  RVector coherence() const {
    RVector v(3);
    v << std::sqrt(2.0) * a, std::sqrt(2.0) * b, std::sqrt(2.0) * (rho11 - 0.5);
    return v;
  }
  double sigma3() const { return 2.0 * rho11 - 1.0; }
};

struct QubitBlochEquations {
  QubitDriving driving;

  void derivative(double t, const RVector& x, RVector& dx) const {
    const double om = driving.omega(t);
    const double gp = driving.gamma_plus(t), gm = driving.gamma_minus(t), g3 = driving.g3(t);
    const double alpha = 0.5 * (gp + gm), beta = 0.5 * (gp - gm);
    dx.resize(3);
    dx(0) = om * x(1) - (alpha + 2.0 * g3) * x(0);
    dx(1) = -om * x(0) - (alpha + 2.0 * g3) * x(1);
    dx(2) = (alpha + beta) - 2.0 * alpha * x(2);
  }

  /// The same equations as an affine map on v: dv/dt = M v + c.
  std::pair<RMatrix, RVector> affine(double t) const {
    const double om = driving.omega(t);
    const double gp = driving.gamma_plus(t), gm = driving.gamma_minus(t), g3 = driving.g3(t);
    const double alpha = 0.5 * (gp + gm), beta = 0.5 * (gp - gm);
    RMatrix m = RMatrix::Zero(3, 3);
    m(0, 0) = m(1, 1) = -(alpha + 2.0 * g3);
    m(0, 1) = om;
    m(1, 0) = -om;
    m(2, 2) = -2.0 * alpha;
    RVector c = RVector::Zero(3);
    c(2) = std::sqrt(2.0) * beta;
    return {m, c};
  }

  std::vector<QubitBlochState> evolve(const QubitBlochState& s0, const std::vector<double>& grid,
                                      const IntegratorConfig& cfg = {}) const {
    if (grid.empty()) throw InvalidArgument("QubitBlochEquations::evolve: empty grid");
    std::vector<QubitBlochState> out;
    RVector x(3);
    x << s0.a, s0.b, s0.rho11;
    const double t0 = grid.front();
    integrate([this](double t, const RVector& y, RVector& dy) { derivative(t, y, dy); }, x, t0, grid,
              driving.breaks_between(t0, grid.back()), cfg,
              [&](double, const RVector& y) { out.push_back({y(0), y(1), y(2)}); });
    return out;
  }
};

inline QubitBlochEquations qubit_bloch_equations(const QubitDriving& d) { return {d}; }

}  // namespace lindblad
