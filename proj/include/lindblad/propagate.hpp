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
#include <sstream>
#include <string>
#include <vector>

#include <unsupported/Eigen/MatrixFunctions>

#include "lindblad/integrator.hpp"
#include "lindblad/liouville.hpp"

namespace lindblad {

/// Evenly spaced grid with `count` points on [t0, t1] (count >= 2).
inline std::vector<double> linear_grid(double t0, double t1, int count) {
  if (count < 2) throw InvalidArgument("linear_grid: need at least two points");
  std::vector<double> g(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) g[static_cast<std::size_t>(i)] = t0 + (t1 - t0) * i / (count - 1);
  g.back() = t1;
  return g;
}

struct StateDiagnostics {
  double trace_deviation = 0.0;
  double hermiticity_deviation = 0.0;
  double min_eigenvalue = 0.0;
};

inline StateDiagnostics diagnose_state(const CMatrix& rho) {
  StateDiagnostics d;
  d.trace_deviation = std::abs(rho.trace() - 1.0);
  d.hermiticity_deviation = hermiticity_deviation(rho);
  Eigen::SelfAdjointEigenSolver<CMatrix> es(0.5 * (rho + rho.adjoint()), Eigen::EigenvaluesOnly);
  d.min_eigenvalue = es.eigenvalues().minCoeff();
  return d;
}

inline Complex expectation(const VectorizedState& v, const CMatrix& x) { return (devectorize(v) * x).trace(); }

struct Trajectory {
  std::vector<double> times;
  std::vector<VectorizedState> states;
  std::vector<std::string> warnings;
  double max_trace_deviation = 0.0;
  double max_hermiticity_deviation = 0.0;
  double min_eigenvalue = 1.0;
  IntegrationStats stats;

  CMatrix rho(std::size_t i) const { return devectorize(states.at(i)); }
  /// Real part of tr(rho_t X) along the trajectory.
  std::vector<double> observable(const CMatrix& x) const {
    std::vector<double> out;
    out.reserve(states.size());
    for (const auto& s : states) out.push_back(expectation(s, x).real());
    return out;
  }
};

inline constexpr double kPositivityErrorFloor = -1e-6;

namespace detail {
inline auto liouville_rhs(const LiouvillianSpec& spec) {
  return [&spec](double t, const auto& y, auto& dy) { dy.noalias() = assemble(spec, t) * y; };
}
}  // namespace detail

/**
 * Solves d vec(rho)/dt = L_t vec(rho) and records the state at every grid time
 * (grid.front() is the initial time). Positivity violations below -1e-6 are
 * errors; smaller ones are recorded as warnings.
 */
inline Trajectory evolve(const LiouvillianSpec& spec, const CMatrix& rho0, const std::vector<double>& grid,
                         const IntegratorConfig& cfg = {}) {
  const int n = spec.n();
  if (rho0.rows() != n || rho0.cols() != n) throw InvalidDimension("evolve: initial state dimension mismatch");
  if (grid.size() < 2 || grid.back() <= grid.front()) throw InvalidArgument("evolve: grid must span t1 > t0");
  Trajectory traj;
  traj.times.reserve(grid.size());
  traj.states.reserve(grid.size());
  const double t0 = grid.front();
  traj.stats = integrate(detail::liouville_rhs(spec), vectorize(rho0), t0, grid,
                         breakpoints_between(spec, t0, grid.back()), cfg,
                         [&](double t, const VectorizedState& v) {
                           traj.times.push_back(t);
                           traj.states.push_back(v);
                           const StateDiagnostics d = diagnose_state(devectorize(v));
                           traj.max_trace_deviation = std::max(traj.max_trace_deviation, d.trace_deviation);
                           traj.max_hermiticity_deviation =
                               std::max(traj.max_hermiticity_deviation, d.hermiticity_deviation);
                           traj.min_eigenvalue = std::min(traj.min_eigenvalue, d.min_eigenvalue);
                           if (d.min_eigenvalue < kPositivityErrorFloor) {
                             std::ostringstream os;
                             os << "evolve: state lost positivity at t = " << t << " (min eigenvalue "
                                << d.min_eigenvalue << ")";
                             throw NumericalError(os.str());
                           }
                           if (d.min_eigenvalue < -1e-12) {
                             std::ostringstream os;
                             os << "small negative eigenvalue " << d.min_eigenvalue << " at t = " << t;
                             traj.warnings.push_back(os.str());
                           }
                         });
  return traj;
}

inline Trajectory evolve(const LiouvillianSpec& spec, const CMatrix& rho0, double t0, double t1, int samples = 201,
                         const IntegratorConfig& cfg = {}) {
  return evolve(spec, rho0, linear_grid(t0, t1, samples), cfg);
}

/// Endpoint of the linear flow for an arbitrary (not necessarily physical) vector.
inline VectorizedState propagate_vector(const LiouvillianSpec& spec, const VectorizedState& v0, double t0, double t1,
                                        const IntegratorConfig& cfg = {}) {
  VectorizedState out = v0;
  if (t1 == t0) return out;
  if (t1 < t0) throw InvalidArgument("propagate_vector: t1 < t0");
  integrate(detail::liouville_rhs(spec), v0, t0, {t1}, breakpoints_between(spec, t0, t1), cfg,
            [&](double, const VectorizedState& v) { out = v; });
  return out;
}

/// Lambda_{t1,t0}: integrates dLambda/dt = L_t Lambda from the identity.
inline Superoperator dynamical_map(const LiouvillianSpec& spec, double t0, double t1, const IntegratorConfig& cfg = {}) {
  const int d = spec.space->dim();
  Superoperator out = Superoperator::Identity(d, d);
  if (t1 == t0) return out;
  if (t1 < t0) throw InvalidArgument("dynamical_map: t1 < t0");
  integrate(detail::liouville_rhs(spec), out, t0, {t1}, breakpoints_between(spec, t0, t1), cfg,
            [&](double, const Superoperator& m) { out = m; });
  return out;
}

/// Maps Lambda_{t_i, t0} at every time in `times` (each >= t0), in one pass.
inline std::vector<Superoperator> dynamical_maps(const LiouvillianSpec& spec, double t0,
                                                 const std::vector<double>& times, const IntegratorConfig& cfg = {}) {
  const int d = spec.space->dim();
  std::vector<Superoperator> out;
  out.reserve(times.size());
  if (times.empty()) return out;
  integrate(detail::liouville_rhs(spec), Superoperator::Identity(d, d).eval(), t0, times,
            breakpoints_between(spec, t0, times.back()), cfg,
            [&](double, const Superoperator& m) { out.push_back(m); });
  return out;
}

/// exp(m s) by Pade scaling-and-squaring.
inline Superoperator matrix_exp(const Superoperator& m, double s = 1.0) {
  if (!m.allFinite() || !std::isfinite(s)) throw NumericalError("matrix_exp: non-finite input");
  Superoperator out = (m * s).exp();
  if (!out.allFinite()) throw NumericalError("matrix_exp: overflow (norm too large)");
  return out;
}

struct CptpReport {
  double trace_residual = 0.0;        // max |vec(I)^dag Lambda - vec(I)^dag|
  double hermiticity_residual = 0.0;  // max |C - C^dag| of the Choi matrix
  double choi_min_eigenvalue = 0.0;

  bool passes(double eig_floor = -1e-8, double trace_tol = 1e-10) const {
    return choi_min_eigenvalue >= eig_floor && trace_residual < trace_tol && hermiticity_residual < 1e-8;
  }
};

/// Choi matrix C = sum_ij E_ij (x) Lambda(E_ij) (block (i, j) = Lambda(E_ij)).
inline CMatrix choi_matrix(const Superoperator& map) {
  const int n = level_count_of(map.rows());
  CMatrix c = CMatrix::Zero(n * n, n * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const CVector col = map.col(i + n * j);  // vec(E_ij) is the canonical vector i + n j
      c.block(i * n, j * n, n, n) = devectorize(col);
    }
  return c;
}

inline CptpReport cptp_diagnostics(const Superoperator& map) {
  if (map.rows() != map.cols()) throw InvalidDimension("cptp_diagnostics: map must be square");
  const int n = level_count_of(map.rows());
  CptpReport r;
  const Eigen::RowVectorXcd tr = trace_row(n);
  r.trace_residual = (tr * map - tr).cwiseAbs().maxCoeff();
  const CMatrix c = choi_matrix(map);
  r.hermiticity_residual = hermiticity_deviation(c);
  Eigen::SelfAdjointEigenSolver<CMatrix> es(0.5 * (c + c.adjoint()), Eigen::EigenvaluesOnly);
  r.choi_min_eigenvalue = es.eigenvalues().minCoeff();
  return r;
}

}  // namespace lindblad
