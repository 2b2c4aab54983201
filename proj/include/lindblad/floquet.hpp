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
#include <array>
#include <cmath>
#include <numbers>
#include <vector>

#include "lindblad/qubit_exact.hpp"

namespace lindblad {

/// One-period generator at a phase, with its spectrum and stroboscopic steady state.
struct FloquetData {
  double t0 = 0.0;
  Superoperator LF;
  CVector spectrum;      // sorted by decreasing real part
  CMatrix steady_state;  // unit trace, kernel of LF
  double kernel_residual = 0.0;
  bool physical = true;  // false if Gamma_pm^F < 0 at this phase
};

namespace detail {
inline CVector sorted_spectrum(const Superoperator& m) {
  Eigen::ComplexEigenSolver<CMatrix> es(m, false);
  CVector ev = es.eigenvalues();
  std::sort(ev.data(), ev.data() + ev.size(), [](const Complex& a, const Complex& b) {
    if (std::abs(a.real() - b.real()) > 1e-12) return a.real() > b.real();
    return a.imag() > b.imag();
  });
  return ev;
}
}  // namespace detail

/// Eigenvector of the smallest-magnitude eigenvalue, hermitized and normalized to unit trace.
inline CMatrix kernel_state(const Superoperator& l) {
  Eigen::ComplexEigenSolver<CMatrix> es(l);
  Eigen::Index best = 0;
  es.eigenvalues().cwiseAbs().minCoeff(&best);
  CMatrix rho = devectorize(es.eigenvectors().col(best));
  const Complex tr = rho.trace();
  if (std::abs(tr) < 1e-14) throw NumericalError("kernel_state: null vector has zero trace");
  rho /= tr;
  return 0.5 * (rho + rho.adjoint());
}

inline FloquetData floquet_data(const Superoperator& lf, double t0 = 0.0) {
  FloquetData d;
  d.t0 = t0;
  d.LF = lf;
  d.spectrum = detail::sorted_spectrum(lf);
  d.steady_state = kernel_state(lf);
  d.kernel_residual = (lf * vectorize(d.steady_state)).cwiseAbs().maxCoeff();
  return d;
}

/// Qubit Floquet generator assembled from (Omega^F, Gamma_pm^F(t0), Gamma_3^F) at phase index i.
inline FloquetData floquet_generator(const FloquetParams& fp, std::size_t i) {
  FloquetData d = floquet_data(fp.generator(i), fp.phases.at(i));
  d.physical = fp.gamma_plus_F[i] >= 0.0 && fp.gamma_minus_F[i] >= 0.0;
  return d;
}

/**
 * Closed-form spectrum {0, -Gamma, -Gamma/2 - 2 Gamma_3 -+ i Omega} of the qubit
 * Liouvillian. With Omega_bar the H_3 coefficient (Omega / sqrt2) the complex
 * pair reads -(Gamma -+ i 2 sqrt2 Omega_bar)/2.
 */
inline std::array<Complex, 4> closed_form_spectrum(double gamma_total, double omega, double gamma3 = 0.0) {
  const double re = -0.5 * gamma_total - 2.0 * gamma3;
  return {Complex{0.0, 0.0}, Complex{-gamma_total, 0.0}, Complex{re, omega}, Complex{re, -omega}};
}

inline Superoperator stroboscopic_map(const Superoperator& lf, int m, double period) {
  if (m < 0) throw InvalidArgument("stroboscopic_map: m must be >= 0");
  return matrix_exp(lf, m * period);
}

/// K_{t,t0} = W_t^{-1} W_{t0}; Lambda_{t,t0} = K_{t,t0} e^{L_F(t0)(t - t0)}.
inline Superoperator micromotion(const Superoperator& w_t, const Superoperator& w_t0) {
  Eigen::FullPivLU<CMatrix> lu(w_t);
  if (!lu.isInvertible()) throw NumericalError("micromotion: W_t is singular");
  return lu.solve(w_t0);
}

// ---------------------------------------------------------------------------
// Fourier modes and the high-frequency (Magnus) expansion.
// ---------------------------------------------------------------------------

/// L_t = Lbar + sum_{k != 0} Vhat_k e^{i k w t}, k in [-k_max, k_max].
struct FourierModes {
  double period = 0.0;
  double omega = 0.0;
  int k_max = 0;
  Superoperator Lbar;
  std::vector<Superoperator> vhat;  // index k + k_max; the k = 0 slot is zero
  double reconstruction_residual = 0.0;
  double quadrature_delta = 0.0;  // change of the modes when the sample count is halved

  const Superoperator& V(int k) const { return vhat.at(static_cast<std::size_t>(k + k_max)); }
  bool has(int k) const { return k != 0 && std::abs(k) <= k_max; }
  Superoperator evaluate(double t) const {
    Superoperator out = Lbar;
    for (int k = -k_max; k <= k_max; ++k)
      if (k != 0) out += std::exp(kI * (k * omega * t)) * V(k);
    return out;
  }
};

namespace detail {

inline std::pair<std::vector<double>, std::vector<double>> gauss_legendre8() {
  static const std::vector<double> x = {-0.9602898564975363, -0.7966664774136267, -0.5255324099163290,
                                        -0.1834346424956498, 0.1834346424956498,  0.5255324099163290,
                                        0.7966664774136267,  0.9602898564975363};
  static const std::vector<double> w = {0.1012285362903763, 0.2223810344533745, 0.3137066458778873,
                                        0.3626837833783620, 0.3626837833783620, 0.3137066458778873,
                                        0.2223810344533745, 0.1012285362903763};
  return {x, w};
}

// Composite 8-point Gauss-Legendre over [0, T], panels aligned with breakpoints.
inline void fourier_quadrature(const LiouvillianSpec& spec, double period, int k_max, int samples,
                               Superoperator& lbar, std::vector<Superoperator>& modes) {
  std::vector<double> edges = {0.0};
  for (double b : breakpoints_between(spec, 0.0, period)) edges.push_back(b);
  edges.push_back(period);
  const int segs = static_cast<int>(edges.size()) - 1;
  const int panels_per_seg = std::max(1, samples / (8 * segs));
  const auto [gx, gw] = gauss_legendre8();
  const int d = spec.space->dim();
  const double omega = 2.0 * std::numbers::pi / period;
  lbar = Superoperator::Zero(d, d);
  modes.assign(static_cast<std::size_t>(2 * k_max + 1), Superoperator::Zero(d, d));
  for (int s = 0; s < segs; ++s) {
    const double a = edges[static_cast<std::size_t>(s)], b = edges[static_cast<std::size_t>(s) + 1];
    const double hp = (b - a) / panels_per_seg;
    for (int p = 0; p < panels_per_seg; ++p) {
      const double pa = a + p * hp;
      for (std::size_t g = 0; g < gx.size(); ++g) {
        const double t = pa + 0.5 * hp * (gx[g] + 1.0);
        const double wt = 0.5 * hp * gw[g] / period;
        const Superoperator l = assemble(spec, t);
        lbar += wt * l;
        for (int k = 1; k <= k_max; ++k) {
          const Complex e = std::exp(-kI * (k * omega * t));
          modes[static_cast<std::size_t>(k + k_max)] += (wt * e) * l;
          modes[static_cast<std::size_t>(-k + k_max)] += (wt * std::conj(e)) * l;
        }
      }
    }
  }
}

}  // namespace detail

/// Fourier modes of a periodic spec by panel quadrature (>= `samples` nodes), with a halving check.
inline FourierModes fourier_modes(const LiouvillianSpec& spec, int k_max = 8, int samples = 2048) {
  if (!spec.period || !(*spec.period > 0.0)) throw InvalidArgument("fourier_modes: spec is not periodic");
  if (k_max < 1) throw InvalidArgument("fourier_modes: k_max must be >= 1");
  FourierModes fm;
  fm.period = *spec.period;
  fm.omega = 2.0 * std::numbers::pi / fm.period;
  fm.k_max = k_max;
  detail::fourier_quadrature(spec, fm.period, k_max, samples, fm.Lbar, fm.vhat);

  Superoperator lbar_half;
  std::vector<Superoperator> half;
  detail::fourier_quadrature(spec, fm.period, k_max, std::max(8, samples / 2), lbar_half, half);
  fm.quadrature_delta = (fm.Lbar - lbar_half).cwiseAbs().maxCoeff();
  for (int k = -k_max; k <= k_max; ++k) {
    const auto idx = static_cast<std::size_t>(k + k_max);
    if (k != 0) fm.quadrature_delta = std::max(fm.quadrature_delta, (fm.vhat[idx] - half[idx]).cwiseAbs().maxCoeff());
  }
  fm.vhat[static_cast<std::size_t>(k_max)].setZero();

  for (int i = 0; i < 16; ++i) {
    const double t = fm.period * (i + 0.37) / 16.0;
    fm.reconstruction_residual =
        std::max(fm.reconstruction_residual, (fm.evaluate(t) - assemble(spec, t)).cwiseAbs().maxCoeff());
  }
  return fm;
}

struct MagnusResult {
  Superoperator Ltilde;  // time-independent generator in the rotating frame
  Superoperator LF;      // Floquet generator at phase t0
  Superoperator K;       // log of the micromotion K_{t,t0}
};

namespace detail {
inline Superoperator comm(const Superoperator& a, const Superoperator& b) { return a * b - b * a; }
}  // namespace detail

/**
 * High-frequency expansion up to `order` (0, 1, 2) in 1/w.
 *
 *   Phi_1(t) = (i/w) sum_k e^{ikwt} V_k / k
 *   Phi_2(t) = -(1/w^2) sum_k e^{ikwt} [V_k, Lbar]/k^2
 *              -(1/w^2) sum_k sum_{q != -k} e^{i(k+q)wt} [V_k, V_q] / (2k(k+q))
 *   L~_1 = (i/w) sum_k [V_k, V_-k] / (2k)
 *   L~_2 = -(1/w^2) ( sum_k [[V_k, Lbar], V_-k] / (2k^2)
 *                     + sum_{k,q} [V_k, [V_q, V_{-k-q}]] / (3kq) )
 *   L_F  = e^{-Phi(t0)} L~ e^{Phi(t0)}   expanded to the same order
 *   K    = Phi(t0) - Phi(t) - [Phi_1(t), Phi_1(t0)] / 2
 */
inline MagnusResult magnus_second_order(const FourierModes& m, double t, double t0, int order = 2) {
  using detail::comm;
  if (!(m.omega > 0.0)) throw InvalidArgument("magnus_second_order: omega must be > 0");
  if (order < 0 || order > 2) throw InvalidArgument("magnus_second_order: order must be 0, 1 or 2");
  const int kmax = m.k_max;
  const double w = m.omega;
  const Eigen::Index d = m.Lbar.rows();
  const Superoperator zero = Superoperator::Zero(d, d);

  auto phi1 = [&](double tt) {
    Superoperator p = zero;
    for (int k = -kmax; k <= kmax; ++k)
      if (k != 0) p += (kI / (w * k)) * std::exp(kI * (k * w * tt)) * m.V(k);
    return p;
  };
  auto phi2 = [&](double tt) {
    Superoperator p = zero;
    for (int k = -kmax; k <= kmax; ++k) {
      if (k == 0) continue;
      p -= (1.0 / (w * w * k * k)) * std::exp(kI * (k * w * tt)) * comm(m.V(k), m.Lbar);
      for (int q = -kmax; q <= kmax; ++q) {
        if (q == 0 || q == -k) continue;
        p -= (1.0 / (w * w * 2.0 * k * (k + q))) * std::exp(kI * ((k + q) * w * tt)) * comm(m.V(k), m.V(q));
      }
    }
    return p;
  };

  MagnusResult r;
  r.Ltilde = m.Lbar;
  r.LF = m.Lbar;
  r.K = zero;
  if (order == 0) return r;

  Superoperator lt1 = zero;
  for (int k = -kmax; k <= kmax; ++k)
    if (k != 0) lt1 += (kI / (w * 2.0 * k)) * comm(m.V(k), m.V(-k));
  const Superoperator p1_t0 = phi1(t0), p1_t = phi1(t);
  r.Ltilde += lt1;
  r.LF += lt1 - comm(p1_t0, m.Lbar);
  r.K = p1_t0 - p1_t;
  if (order == 1) return r;

  Superoperator lt2 = zero;
  for (int k = -kmax; k <= kmax; ++k) {
    if (k == 0) continue;
    lt2 += (1.0 / (2.0 * k * k)) * comm(comm(m.V(k), m.Lbar), m.V(-k));
    for (int q = -kmax; q <= kmax; ++q) {
      const int s = -k - q;
      if (q == 0 || s == 0 || std::abs(s) > kmax) continue;
      lt2 += (1.0 / (3.0 * k * q)) * comm(m.V(k), comm(m.V(q), m.V(s)));
    }
  }
  lt2 *= -1.0 / (w * w);
  const Superoperator p2_t0 = phi2(t0), p2_t = phi2(t);
  r.Ltilde += lt2;
  r.LF += lt2 - comm(p1_t0, lt1) - comm(p2_t0, m.Lbar) + 0.5 * comm(p1_t0, comm(p1_t0, m.Lbar));
  r.K += p2_t0 - p2_t - 0.5 * comm(p1_t, p1_t0);
  return r;
}

/// Least-squares coordinates of a qubit generator on {H_3, D_up, D_down, D_33}.
struct QubitParams {
  double omega = 0.0;
  double gamma_plus = 0.0;
  double gamma_minus = 0.0;
  double gamma3 = 0.0;
  double residual = 0.0;  // max-entry residual outside the subalgebra span
};

inline QubitParams project_qubit_params(const Superoperator& l) {
  if (l.rows() != 4 || l.cols() != 4) throw InvalidDimension("project_qubit_params: expected a 4x4 generator");
  const auto& q = qubit_operators();
  CMatrix design(16, 4);
  design.col(0) = Eigen::Map<const CVector>(q.H3.data(), 16);
  design.col(1) = Eigen::Map<const CVector>(q.D_up.data(), 16);
  design.col(2) = Eigen::Map<const CVector>(q.D_down.data(), 16);
  design.col(3) = Eigen::Map<const CVector>(q.D33.data(), 16);
  const CVector target = Eigen::Map<const CVector>(l.data(), 16);
  const CVector x = design.colPivHouseholderQr().solve(target);
  QubitParams p;
  p.omega = -std::sqrt(2.0) * x(0).real();
  p.gamma_plus = x(1).real();
  p.gamma_minus = x(2).real();
  p.gamma3 = 0.5 * x(3).real();
  p.residual = (design * x - target).cwiseAbs().maxCoeff();
  return p;
}

}  // namespace lindblad
