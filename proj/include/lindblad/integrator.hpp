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
#include <limits>
#include <sstream>
#include <vector>

#include "lindblad/types.hpp"

namespace lindblad {

enum class IntegratorMethod { adaptive_dopri5, fixed_rk4 };

struct IntegratorConfig {
  IntegratorMethod method = IntegratorMethod::adaptive_dopri5;
  double rel_tol = 1e-9;
  double abs_tol = 1e-11;
  double max_step = std::numeric_limits<double>::infinity();
  /// Step size for fixed_rk4 (each node-to-node interval is split evenly).
  double fixed_step = 1e-2;
  long max_steps = 50'000'000;

  void validate() const {
    if (!(rel_tol > 0.0) || !(abs_tol > 0.0)) throw InvalidArgument("IntegratorConfig: tolerances must be > 0");
    if (!(max_step > 0.0)) throw InvalidArgument("IntegratorConfig: max_step must be > 0");
    if (!(fixed_step > 0.0)) throw InvalidArgument("IntegratorConfig: fixed_step must be > 0");
  }
};

struct IntegrationStats {
  long accepted = 0;
  long rejected = 0;
  long rhs_evals = 0;
};

namespace detail {

// Dormand-Prince 5(4) tableau.
struct Dopri5 {
  static constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
  static constexpr double a21 = 1.0 / 5;
  static constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
  static constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
  static constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561, a54 = -212.0 / 729;
  static constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                          a65 = -5103.0 / 18656;
  static constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784, b6 = 11.0 / 84;
  // b - b_hat (error weights)
  static constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                          e6 = 22.0 / 525, e7 = -1.0 / 40;
};

/// Keeps coefficient evaluations strictly inside [a, b] so that piecewise
/// functions are sampled on the segment being integrated.
struct SegmentClamp {
  double lo, hi;
  SegmentClamp(double a, double b) {
    const double scale = std::max({1.0, std::abs(a), std::abs(b)});
    const double eps = std::min(1e-13 * scale, 1e-3 * (b - a));
    lo = a + eps;
    hi = b - eps;
  }
  double operator()(double t) const { return std::clamp(t, lo, hi); }
};

template <class State>
double scaled_error(const State& err, const State& y0, const State& y1, double atol, double rtol) {
  const auto denom = (atol + rtol * y0.cwiseAbs().array().max(y1.cwiseAbs().array()));
  return (err.cwiseAbs().array() / denom).maxCoeff();
}

}  // namespace detail

/**
 * Integrates dy/dt = f(t, y) from t0 through the increasing output times,
 * calling observe(t, y) at each of them. Integration restarts at every entry of
 * `breaks` (corners or jumps of the coefficients) and never evaluates f across
 * one. f has signature void(double t, const State& y, State& dydt).
 */
template <class State, class Rhs, class Observer>
IntegrationStats integrate(const Rhs& f, State y, double t0, const std::vector<double>& out_times,
                           const std::vector<double>& breaks, const IntegratorConfig& cfg, Observer&& observe) {
  cfg.validate();
  IntegrationStats stats;
  if (out_times.empty()) return stats;
  for (std::size_t i = 0; i < out_times.size(); ++i) {
    if (out_times[i] < t0 || (i > 0 && out_times[i] < out_times[i - 1]))
      throw InvalidArgument("integrate: output times must be non-decreasing and >= t0");
  }
  const double t_end = out_times.back();

  // Merge outputs and breaks into a node list; segment ends are breaks.
  std::vector<double> seg_ends;
  for (double b : breaks)
    if (b > t0 && b < t_end) seg_ends.push_back(b);
  std::sort(seg_ends.begin(), seg_ends.end());
  seg_ends.push_back(t_end);

  std::size_t next_out = 0;
  auto emit_until = [&](double t) {
    while (next_out < out_times.size() && out_times[next_out] <= t) {
      observe(out_times[next_out], y);
      ++next_out;
    }
  };
  emit_until(t0);

  State k1, k2, k3, k4, k5, k6, k7, ytmp, ynew, err;
  double t = t0;
  double h_prev = 0.0;
  for (double seg_b : seg_ends) {
    if (seg_b <= t) continue;
    const double seg_a = t;
    const detail::SegmentClamp clamp(seg_a, seg_b);
    auto eval = [&](double tt, const State& yy, State& out) {
      f(clamp(tt), yy, out);
      ++stats.rhs_evals;
    };

    if (cfg.method == IntegratorMethod::fixed_rk4) {
      while (t < seg_b) {
        // Next node: output time or segment end.
        double node = seg_b;
        if (next_out < out_times.size() && out_times[next_out] < node) node = out_times[next_out];
        const double len = node - t;
        const long steps = std::max(1L, static_cast<long>(std::ceil(len / cfg.fixed_step - 1e-9)));
        const double h = len / static_cast<double>(steps);
        for (long s = 0; s < steps; ++s) {
          const double ts = t + h * static_cast<double>(s);
          eval(ts, y, k1);
          ytmp = y + (0.5 * h) * k1;
          eval(ts + 0.5 * h, ytmp, k2);
          ytmp = y + (0.5 * h) * k2;
          eval(ts + 0.5 * h, ytmp, k3);
          ytmp = y + h * k3;
          eval(ts + h, ytmp, k4);
          y += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
          ++stats.accepted;
        }
        t = node;
        emit_until(t);
      }
      continue;
    }

    using D = detail::Dopri5;
    eval(t, y, k1);
    double h;
    if (h_prev > 0.0) {
      h = h_prev;
    } else {
      const double d0 = y.cwiseAbs().maxCoeff();
      const double d1 = k1.cwiseAbs().maxCoeff();
      h = (d0 < 1e-5 || d1 < 1e-5) ? 1e-6 : 0.01 * d0 / d1;
      h = std::max(h, 1e-10);
    }
    while (t < seg_b) {
      double target = seg_b;
      if (next_out < out_times.size() && out_times[next_out] < target) target = out_times[next_out];
      const double snap = 1e-13 * std::max(1.0, std::abs(t));
      if (target - t <= snap) {
        // Rounding-level remainder: move onto the node without a step.
        t = target;
        emit_until(t);
        continue;
      }
      h = std::min({h, cfg.max_step, target - t});
      if (target - t - h <= 1e3 * snap) h = target - t;  // never leave a sliver before a node
      const bool lands = (h >= target - t);
      if (h <= 1e-14 * std::max(1.0, std::abs(t))) {
        std::ostringstream os;
        os << "step size underflow at t = " << t << " (h = " << h << "); the problem may be stiff";
        throw StiffnessError(os.str());
      }
      if (stats.accepted + stats.rejected > cfg.max_steps) throw StiffnessError("integrate: maximum step count exceeded");

      ytmp = y + h * (D::a21 * k1);
      eval(t + D::c2 * h, ytmp, k2);
      ytmp = y + h * (D::a31 * k1 + D::a32 * k2);
      eval(t + D::c3 * h, ytmp, k3);
      ytmp = y + h * (D::a41 * k1 + D::a42 * k2 + D::a43 * k3);
      eval(t + D::c4 * h, ytmp, k4);
      ytmp = y + h * (D::a51 * k1 + D::a52 * k2 + D::a53 * k3 + D::a54 * k4);
      eval(t + D::c5 * h, ytmp, k5);
      ytmp = y + h * (D::a61 * k1 + D::a62 * k2 + D::a63 * k3 + D::a64 * k4 + D::a65 * k5);
      eval(t + h, ytmp, k6);
      ynew = y + h * (D::b1 * k1 + D::b3 * k3 + D::b4 * k4 + D::b5 * k5 + D::b6 * k6);
      const double t_new = lands ? target : t + h;
      eval(t_new, ynew, k7);
      err = h * (D::e1 * k1 + D::e3 * k3 + D::e4 * k4 + D::e5 * k5 + D::e6 * k6 + D::e7 * k7);
      const double en = detail::scaled_error(err, y, ynew, cfg.abs_tol, cfg.rel_tol);
      if (!std::isfinite(en)) {
        ++stats.rejected;
        h *= 0.1;
        continue;
      }
      if (en <= 1.0) {
        ++stats.accepted;
        t = t_new;
        y.swap(ynew);
        k1.swap(k7);
        emit_until(t);
        const double fac = en == 0.0 ? 5.0 : std::clamp(0.9 * std::pow(en, -0.2), 0.2, 5.0);
        // Do not let a short landing step shrink the next step.
        if (!lands) h_prev = h * fac;
        else h_prev = std::max(h_prev, h * fac);
        h = h_prev;
      } else {
        ++stats.rejected;
        h *= std::clamp(0.9 * std::pow(en, -0.2), 0.1, 1.0);
      }
    }
  }
  emit_until(t);
  return stats;
}

}  // namespace lindblad
