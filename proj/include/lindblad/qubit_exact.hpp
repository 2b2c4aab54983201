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
#include <numeric>
#include <optional>
#include <sstream>
#include <utility>
#include <vector>

#include "lindblad/propagate.hpp"

namespace lindblad {

/**
 * Single qubit with H_t = -Omega(t) sigma_3 / 2 and jumps sigma_+ (rate
 * Gamma_+), sigma_- (Gamma_-), sigma_3 (Gamma_3). If `period` is set all
 * functions are periodic with it and `breakpoints` are offsets in [0, period].
 */
struct QubitDriving {
  ScalarFn omega;
  ScalarFn gamma_plus;
  ScalarFn gamma_minus;
  ScalarFn gamma3;  // may be empty (no dephasing)
  std::optional<double> period;
  std::vector<double> breakpoints;

  double g3(double t) const { return gamma3 ? gamma3(t) : 0.0; }
  std::vector<double> breaks_between(double a, double b) const {
    return breakpoints_between(breakpoints, period, a, b);
  }
};

inline JumpSpec to_jump_spec(const QubitDriving& d) {
  JumpSpec js;
  js.n = 2;
  auto om = d.omega;
  js.hamiltonian = [om](double t) -> CMatrix { return -0.5 * om(t) * pauli::z(); };
  js.jumps.push_back({pauli::plus(), d.gamma_plus});
  js.jumps.push_back({pauli::minus(), d.gamma_minus});
  if (d.gamma3) js.jumps.push_back({pauli::z(), d.gamma3});
  js.breakpoints = d.breakpoints;
  js.period = d.period;
  return js;
}

/// gamma matrix of the jumps sigma_+ (Gamma_+), sigma_- (Gamma_-), sigma_3 (Gamma_3) in the qubit basis.
inline CMatrix qubit_dissipation_matrix(double gamma_plus, double gamma_minus, double gamma3 = 0.0) {
  static const auto parts = [] {
    const OperatorBasis& basis = qubit_operators().space->basis();
    const CVector cp = expand_in_basis(basis, pauli::plus()).tail(3);
    const CVector cm = expand_in_basis(basis, pauli::minus()).tail(3);
    std::array<CMatrix, 3> p{cp * cp.adjoint(), cm * cm.adjoint(), CMatrix::Zero(3, 3)};
    p[2](2, 2) = 2.0;  // sigma_3 = sqrt2 F_3
    return p;
  }();
  CMatrix g = gamma_plus * parts[0] + gamma_minus * parts[1];
  if (gamma3 != 0.0) g += gamma3 * parts[2];
  return g;
}

/// Coefficient-form spec of the qubit driving (h_3 = -Omega/sqrt2, gamma from the three jumps).
inline LiouvillianSpec to_spec(const QubitDriving& d) {
  LiouvillianSpec spec;
  spec.space = qubit_operators().space;
  spec.breakpoints = d.breakpoints;
  spec.period = d.period;
  auto om = d.omega;
  spec.hamiltonian = [om](double t) {
    RVector h = RVector::Zero(3);
    h(2) = -om(t) / std::sqrt(2.0);
    return h;
  };
  spec.dissipation = [d](double t) -> CMatrix {
    return qubit_dissipation_matrix(d.gamma_plus(t), d.gamma_minus(t), d.g3(t));
  };
  return spec;
}

/// Time-independent parameters (Omega~, Gamma~_+, Gamma~_-, Gamma~_3) of the rotating frame.
struct FrameTargets {
  double omega = 0.0;
  double gamma_plus = 0.0;
  double gamma_minus = 0.0;
  double gamma3 = 0.0;

  Superoperator liouvillian() const { return qubit_liouvillian(omega, gamma_plus, gamma_minus, gamma3); }
};

struct FrameInit {
  double f = 0.0;
  double g3 = 0.0;
  double r = 0.0;
  double y = 1.0;
};

/**
 * Coordinates of W_t = e^{f H_3} e^{g_1 D_up} e^{g_2 D_down} e^{g_3 D_33}
 * sampled on a grid, with r = g_1 + g_2 and y = e^{g_2}.
 */
struct RotatingFrameSolution {
  FrameTargets targets;
  std::vector<double> times;
  std::vector<double> f, g3, r, y;

  std::size_t size() const { return times.size(); }
  double g1(std::size_t i) const { return r[i] - std::log(y[i]); }
  double g2(std::size_t i) const { return std::log(y[i]); }
};

/// W for given frame coordinates.
inline Superoperator frame_map(double f, double g1, double g2, double g3) {
  const auto& q = qubit_operators();
  return matrix_exp(q.H3, f) * matrix_exp(q.D_up, g1) * matrix_exp(q.D_down, g2) * matrix_exp(q.D33, g3);
}

inline Superoperator frame_map(const RotatingFrameSolution& s, std::size_t i) {
  return frame_map(s.f[i], s.g1(i), s.g2(i), s.g3[i]);
}

inline IntegratorConfig tight_config() {
  IntegratorConfig c;
  c.rel_tol = 1e-12;
  c.abs_tol = 1e-14;
  return c;
}

/**
 * Integrates the frame equations
 *   f' = (Omega - Omega~)/sqrt2,  g_3' = -2 (Gamma_3 - Gamma~_3),
 *   r' = -[(Gamma_+ - Gamma~_+) + (Gamma_- - Gamma~_-)],
 *   y' = -(Gamma_+ + Gamma_-) y + Gamma_+ + e^r Gamma~_-
 * from grid.front() with the given initial values.
 */
inline RotatingFrameSolution solve_rotating_frame(const QubitDriving& d, const FrameTargets& tg, const FrameInit& init,
                                                  const std::vector<double>& grid,
                                                  const IntegratorConfig& cfg = tight_config()) {
  if (grid.empty()) throw InvalidArgument("solve_rotating_frame: empty grid");
  if (!(init.y > 0.0)) throw FrameBreakdown("solve_rotating_frame: y(t0) must be positive");
  RotatingFrameSolution s;
  s.targets = tg;
  const double t0 = grid.front();
  RVector x(4);
  x << init.f, init.g3, init.r, init.y;
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  auto rhs = [&](double t, const RVector& v, RVector& dv) {
    const double gp = d.gamma_plus(t), gm = d.gamma_minus(t);
    dv.resize(4);
    dv(0) = (d.omega(t) - tg.omega) * inv_sqrt2;
    dv(1) = -2.0 * (d.g3(t) - tg.gamma3);
    dv(2) = -((gp - tg.gamma_plus) + (gm - tg.gamma_minus));
    dv(3) = -(gp + gm) * v(3) + gp + std::exp(v(2)) * tg.gamma_minus;
  };
  integrate(rhs, x, t0, grid, d.breaks_between(t0, grid.back()), cfg, [&](double t, const RVector& v) {
    if (!(v(3) > 0.0)) {
      std::ostringstream os;
      os << "rotating frame breaks down at t = " << t << ": y = " << v(3) << " <= 0";
      throw FrameBreakdown(os.str());
    }
    s.times.push_back(t);
    s.f.push_back(v(0));
    s.g3.push_back(v(1));
    s.r.push_back(v(2));
    s.y.push_back(v(3));
  });
  return s;
}

/// Time averages of (Omega, Gamma_+, Gamma_-, Gamma_3) over [t0, t0 + period].
inline FrameTargets period_averages(const QubitDriving& d, double t0 = 0.0) {
  if (!d.period || !(*d.period > 0.0)) throw InvalidArgument("period_averages: driving is not periodic");
  const double p = *d.period;
  RVector acc = RVector::Zero(4);
  auto rhs = [&](double t, const RVector&, RVector& dv) {
    dv.resize(4);
    dv << d.omega(t), d.gamma_plus(t), d.gamma_minus(t), d.g3(t);
  };
  integrate(rhs, acc, t0, {t0 + p}, d.breaks_between(t0, t0 + p), tight_config(),
            [&](double, const RVector& v) { acc = v; });
  acc /= p;
  return {acc(0), acc(1), acc(2), acc(3)};
}

/**
 * Periodic branch of the rotating frame with targets equal to the period
 * averages. r(t0) = 0 is periodic by construction; y(t0) is the fixed point
 * y* = b / (1 - a) of the one-period affine map y(t0 + T) = a y(t0) + b.
 */
inline RotatingFrameSolution periodic_fixed_point(const QubitDriving& d, const std::vector<double>& grid,
                                                  const IntegratorConfig& cfg = tight_config()) {
  if (!d.period) throw InvalidArgument("periodic_fixed_point: driving is not periodic");
  if (grid.empty()) throw InvalidArgument("periodic_fixed_point: empty grid");
  const double p = *d.period;
  const double t0 = grid.front();
  const FrameTargets tg = period_averages(d, t0);

  // a = exp(-int (Gamma_+ + Gamma_-)), b = y(t0 + T) started from y(t0) = 0.
  const double total_damping = (tg.gamma_plus + tg.gamma_minus) * p;
  const double a = std::exp(-total_damping);
  if (!(std::abs(1.0 - a) > 1e-14))
    throw NoUniqueFixedPoint("periodic_fixed_point: zero total damping over the period; fixed point is not unique");

  // y from y(t0) = 0 uses the linear ODE directly (y need not stay positive there).
  RVector x(2);
  x << 0.0, 0.0;  // (r, y)
  auto rhs = [&](double t, const RVector& v, RVector& dv) {
    const double gp = d.gamma_plus(t), gm = d.gamma_minus(t);
    dv.resize(2);
    dv(0) = -((gp - tg.gamma_plus) + (gm - tg.gamma_minus));
    dv(1) = -(gp + gm) * v(1) + gp + std::exp(v(0)) * tg.gamma_minus;
  };
  double b = 0.0;
  integrate(rhs, x, t0, {t0 + p}, d.breaks_between(t0, t0 + p), cfg, [&](double, const RVector& v) { b = v(1); });
  FrameInit init;
  init.y = b / (1.0 - a);
  return solve_rotating_frame(d, tg, init, grid, cfg);
}

/// Floquet parameters of the qubit over a set of phases t0.
struct FloquetParams {
  double omega_F = 0.0;
  double gamma3_F = 0.0;
  double gamma_plus_bar = 0.0;
  double gamma_minus_bar = 0.0;
  std::vector<double> phases;
  std::vector<double> delta_gamma;
  std::vector<double> gamma_plus_F;
  std::vector<double> gamma_minus_F;
  /// Phases where Gamma_+^F or Gamma_-^F < 0 (non-physical generator), not clipped.
  std::vector<double> nonphysical_phases;

  double gamma_total() const { return gamma_plus_bar + gamma_minus_bar; }
  Superoperator generator(std::size_t i) const {
    return qubit_liouvillian(omega_F, gamma_plus_F.at(i), gamma_minus_F.at(i), gamma3_F);
  }
};

/**
 * Gamma_pm^F(t0) = Gamma_pm_bar -+ deltaGamma(t0), with
 * deltaGamma(t0) = (1 - y(t0)) Gamma_+_bar + (e^{r(t0)} - y(t0)) Gamma_-_bar
 * on the periodic branch anchored at t = 0. Phases are reduced modulo the period.
 */
inline FloquetParams floquet_params(const QubitDriving& d, const std::vector<double>& phases,
                                    const IntegratorConfig& cfg = tight_config()) {
  if (!d.period) throw InvalidArgument("floquet_params: driving is not periodic");
  const double p = *d.period;
  std::vector<double> reduced(phases.size());
  for (std::size_t i = 0; i < phases.size(); ++i) {
    double ph = std::fmod(phases[i], p);
    if (ph < 0) ph += p;
    reduced[i] = ph;
  }
  std::vector<std::size_t> order(phases.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](auto i, auto j) { return reduced[i] < reduced[j]; });
  std::vector<double> grid;
  grid.push_back(0.0);
  for (auto i : order) grid.push_back(reduced[i]);
  const RotatingFrameSolution sol = periodic_fixed_point(d, grid, cfg);

  FloquetParams fp;
  fp.omega_F = sol.targets.omega;
  fp.gamma3_F = sol.targets.gamma3;
  fp.gamma_plus_bar = sol.targets.gamma_plus;
  fp.gamma_minus_bar = sol.targets.gamma_minus;
  fp.phases = phases;
  fp.delta_gamma.resize(phases.size());
  fp.gamma_plus_F.resize(phases.size());
  fp.gamma_minus_F.resize(phases.size());
  for (std::size_t k = 0; k < order.size(); ++k) {
    const std::size_t i = order[k];
    const double y = sol.y[k + 1], r = sol.r[k + 1];
    const double dg = (1.0 - y) * fp.gamma_plus_bar + (std::exp(r) - y) * fp.gamma_minus_bar;
    fp.delta_gamma[i] = dg;
    fp.gamma_plus_F[i] = fp.gamma_plus_bar - dg;
    fp.gamma_minus_F[i] = fp.gamma_minus_bar + dg;
    if (fp.gamma_plus_F[i] < 0.0 || fp.gamma_minus_F[i] < 0.0) fp.nonphysical_phases.push_back(phases[i]);
  }
  return fp;
}

/// Lambda_{t_i, t_j} = W_{t_i}^{-1} e^{L~ (t_i - t_j)} W_{t_j} from a frame solution.
inline Superoperator rotating_frame_map(const RotatingFrameSolution& s, std::size_t i, std::size_t j) {
  const Superoperator wi = frame_map(s, i);
  const Superoperator wj = frame_map(s, j);
  return wi.partialPivLu().solve(matrix_exp(s.targets.liouvillian(), s.times[i] - s.times[j]) * wj);
}

// ---------------------------------------------------------------------------
// Worked drivings.
// ---------------------------------------------------------------------------

/// Gamma_pm = Gamma_pm_bar +- A sin(w t), Omega = Omega_bar + Delta cos(w t), no dephasing.
inline QubitDriving counter_oscillating(double gamma_plus_bar = 2.0, double gamma_minus_bar = 3.0, double amp = 0.5,
                                        double w = 1.0, double omega_bar = std::numbers::sqrt2,
                                        double delta = -std::numbers::sqrt2) {
  if (!(w > 0.0)) throw InvalidArgument("counter_oscillating: w must be > 0");
  if (std::abs(amp) > std::min(gamma_plus_bar, gamma_minus_bar))
    throw InvalidArgument("counter_oscillating: |A| must not exceed the mean rates");
  QubitDriving d;
  d.omega = [=](double t) { return omega_bar + delta * std::cos(w * t); };
  d.gamma_plus = [=](double t) { return gamma_plus_bar + amp * std::sin(w * t); };
  d.gamma_minus = [=](double t) { return gamma_minus_bar - amp * std::sin(w * t); };
  d.period = 2.0 * std::numbers::pi / w;
  return d;
}

/// Periodic y(t) = 1 + A (Gamma sin wt - w cos wt) / (Gamma^2 + w^2) for counter-oscillating polarisers.
inline double counter_oscillating_y(double t, double amp, double w, double gamma_total) {
  return 1.0 + amp / (gamma_total * gamma_total + w * w) * (gamma_total * std::sin(w * t) - w * std::cos(w * t));
}

/// deltaGamma(t0) = Gamma (1 - y(t0)); at t0 = 0 this is A w Gamma / (Gamma^2 + w^2).
inline double counter_oscillating_delta_gamma(double t0, double amp, double w, double gamma_total) {
  return gamma_total * (1.0 - counter_oscillating_y(t0, amp, w, gamma_total));
}

/// Gamma_pm = A (1 -+ tanh(t / t_s)), constant Omega, no dephasing.
inline QubitDriving incoherent(double amp = 0.3, double t_s = 2.0, double omega = 1.0) {
  if (!(t_s > 0.0)) throw InvalidArgument("incoherent: t_s must be > 0");
  if (amp < 0.0) throw InvalidArgument("incoherent: A must be >= 0");
  QubitDriving d;
  d.omega = [=](double) { return omega; };
  d.gamma_plus = [=](double t) { return amp * (1.0 - std::tanh(t / t_s)); };
  d.gamma_minus = [=](double t) { return amp * (1.0 + std::tanh(t / t_s)); };
  d.breakpoints = {0.0};  // centre of the crossover; helps the step controller for small t_s
  return d;
}

struct IncoherentMap {
  double pi1 = 0.0;
  double pi2 = 0.0;
  Superoperator map;
};

/**
 * Lambda_{t,t0} = e^{-Omega (t - t0) H_3 / sqrt2} e^{pi_1 D_up} e^{pi_2 D_down} with
 * pi_2 = log(1 + int_{t0}^t e^{2A(t'-t0)} Gamma_-(t') dt'), pi_1 = -pi_2 + 2A (t - t0).
 * Returns one entry per requested time (each >= t0).
 */
inline std::vector<IncoherentMap> incoherent_maps(double amp, double t_s, double omega, double t0,
                                                  const std::vector<double>& times) {
  const QubitDriving d = incoherent(amp, t_s, omega);
  std::vector<IncoherentMap> out;
  out.reserve(times.size());
  if (times.empty()) return out;
  RVector acc = RVector::Zero(1);
  auto rhs = [&](double t, const RVector&, RVector& dv) {
    dv.resize(1);
    dv(0) = std::exp(2.0 * amp * (t - t0)) * d.gamma_minus(t);
  };
  const auto& q = qubit_operators();
  IntegratorConfig cfg = tight_config();
  cfg.max_step = std::max(t_s, 1e-3);
  integrate(rhs, acc, t0, times, breakpoints_between(d.breakpoints, std::nullopt, t0, times.back()), cfg,
            [&](double t, const RVector& v) {
              const double arg = 1.0 + v(0);
              if (!(arg > 0.0)) throw NumericalError("incoherent_maps: logarithm argument is not positive");
              IncoherentMap m;
              m.pi2 = std::log(arg);
              m.pi1 = -m.pi2 + 2.0 * amp * (t - t0);
              m.map = matrix_exp(q.H3, -omega * (t - t0) / std::sqrt(2.0)) * matrix_exp(q.D_up, m.pi1) *
                      matrix_exp(q.D_down, m.pi2);
              out.push_back(std::move(m));
            });
  return out;
}

inline IncoherentMap incoherent_map(double amp, double t_s, double omega, double t0, double t) {
  return incoherent_maps(amp, t_s, omega, t0, {t}).front();
}

struct Populations {
  double up = 0.0;
  double down = 0.0;
};

/// P_up = <up|rho|up> (|up> = e_1, the +1 eigenvector of sigma_3) after applying the map.
inline Populations populations(const Superoperator& map, const CMatrix& rho0) {
  const CMatrix rho = devectorize(map * vectorize(rho0));
  return {rho(0, 0).real(), rho(1, 1).real()};
}

}  // namespace lindblad
