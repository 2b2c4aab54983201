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

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include <json.hpp>

#include "lindblad/cli/scenarios.hpp"
#include "lindblad/lindblad.hpp"

namespace lindblad::cli {

enum class VerifyLevel { fast, full };

struct VerifyOptions {
  VerifyLevel level = VerifyLevel::fast;
  bool inject_fault = false;  // perturbs f_123 by 1e-3 before the algebra checks
  int parallel = 1;
  /// Scenario configurations whose one-period maps are certified; defaults when empty.
  std::vector<Config> scenario_configs;
};

struct CheckResult {
  std::string id;
  std::string name;
  bool passed = false;
  double seconds = 0.0;
  Json metrics = Json::object();
  std::string detail;
};

namespace tol {
inline constexpr double algebra = 1e-9;
inline constexpr double algebra_seconds = 10.0;
inline constexpr double y_fixed_point = 1e-8;
inline constexpr double delta_gamma_expected = 0.096154;
inline constexpr double delta_gamma = 1e-6;
inline constexpr double stroboscopic = 1e-6;
inline constexpr double counter_seconds = 30.0;
inline constexpr double spectrum = 1e-8;
inline constexpr double populations = 1e-6;
inline constexpr double normalisation = 1e-10;
inline constexpr double incoherent_seconds = 30.0;
inline constexpr double magnus_slope = 3.0, magnus_slope_band = 0.5;
inline constexpr double first_order_shift = 0.25, first_order_shift_tol = 1e-9;
inline constexpr double triangle = 1e-6;
inline constexpr double triangle_seconds = 120.0;
inline constexpr double endpoint = 0.02;
inline constexpr double exponent = -1.0, exponent_band = 0.15;
inline constexpr double carnot_c_lo = 9.3, carnot_c_hi = 13.9;
inline constexpr double otto_c_lo = 6.4, otto_c_hi = 9.6;
inline constexpr double engine_seconds = 600.0;
inline constexpr double first_law = 1e-6;
inline constexpr double carnot_ratio = 0.55;
inline constexpr double choi_floor = -1e-8;
inline constexpr double trace = 1e-10;
}  // namespace tol

inline std::vector<Config> default_scenario_configs() {
  std::vector<Config> out;
  for (const auto& s : scenarios()) out.push_back(resolve_config(schema_for(s), {{"scenario", s.name}}, {}, {}));
  return out;
}

/// The criteria suite; engine sweeps are computed once and shared between checks.
class Verifier {
 public:
  explicit Verifier(VerifyOptions opt) : opt_(std::move(opt)) {
    if (opt_.scenario_configs.empty()) opt_.scenario_configs = default_scenario_configs();
  }

  CheckResult algebra() {
    return timed("AC1", "su(n) orthonormality, Jacobi identity and superoperator closure (n = 2, 3)",
                 [&](CheckResult& r) {
                   double worst = 0.0;
                   for (int n : {2, 3}) {
                     const OperatorBasis b = build_su_basis(n);
                     const double ortho = (gram_matrix(b) - CMatrix::Identity(b.size(), b.size())).cwiseAbs().maxCoeff();
                     StructureTensors t = structure_constants(b);
                     if (opt_.inject_fault) t.f_ref(1, 2, 3) += 1e-3;
                     const int m = t.generator_count();
                     double jac = 0.0;
                     for (int a = 1; a <= m; ++a)
                       for (int bb = 1; bb <= m; ++bb)
                         for (int c = 1; c <= m; ++c)
                           for (int d = 1; d <= m; ++d) {
                             double s = 0.0;
                             for (int e = 1; e <= m; ++e)
                               s += t.f(a, bb, e) * t.f(e, c, d) + t.f(c, bb, e) * t.f(a, e, d) +
                                    t.f(d, bb, e) * t.f(a, c, e);
                             jac = std::max(jac, std::abs(s));
                           }
                     const AlgebraReport rep = verify_algebra(*make_liouville_space(n), t, 5000);
                     const std::string k = "n" + std::to_string(n);
                     r.metrics[k] = Json{{"orthonormality", ortho},
                                         {"jacobi", jac},
                                         {"closure_hh", rep.max_hh},
                                         {"closure_hd", rep.max_hd},
                                         {"closure_dd", rep.max_dd},
                                         {"tuples", rep.tuples_checked}};
                     worst = std::max({worst, ortho, jac, rep.max_deviation()});
                   }
                   r.metrics["max_residual"] = worst;
                   r.passed = worst < tol::algebra;
                   r.detail = "max residual " + sci(worst) + " (< " + sci(tol::algebra) + ")";
                 },
                 tol::algebra_seconds);
  }

  CheckResult counter_oscillating_exactness() {
    return timed("AC2", "counter-oscillating polarisers: y(t), deltaGamma(0), stroboscopic states",
                 [&](CheckResult& r) {
                   const QubitDriving d = counter_oscillating();
                   const double period = *d.period;
                   std::vector<double> grid;
                   for (int i = 0; i <= 128; ++i) grid.push_back(period * i / 128.0);
                   const RotatingFrameSolution s = periodic_fixed_point(d, grid);
                   double ydev = 0.0;
                   for (std::size_t i = 0; i < s.size(); ++i)
                     ydev = std::max(ydev, std::abs(s.y[i] - counter_oscillating_y(s.times[i], 0.5, 1.0, 5.0)));
                   const double dg_formula = counter_oscillating_delta_gamma(0.0, 0.5, 1.0, 5.0);
                   const FloquetParams fp = floquet_params(d, {0.0});
                   std::vector<double> times;
                   for (int m = 1; m <= 5; ++m) times.push_back(m * period);
                   const auto maps = dynamical_maps(to_spec(d), 0.0, times, tight_config());
                   double sdev = 0.0;
                   for (int m = 1; m <= 5; ++m)
                     sdev = std::max(sdev, (stroboscopic_map(fp.generator(0), m, period) -
                                            maps[static_cast<std::size_t>(m - 1)])
                                               .cwiseAbs()
                                               .maxCoeff());
                   r.metrics = Json{{"y_max_deviation", ydev},
                                    {"delta_gamma_formula", dg_formula},
                                    {"delta_gamma_floquet", fp.delta_gamma[0]},
                                    {"stroboscopic_max_deviation", sdev}};
                   r.passed = ydev < tol::y_fixed_point &&
                              std::abs(dg_formula - tol::delta_gamma_expected) <= tol::delta_gamma &&
                              std::abs(fp.delta_gamma[0] - tol::delta_gamma_expected) <= tol::delta_gamma &&
                              sdev < tol::stroboscopic;
                   r.detail = "|dy| " + sci(ydev) + ", dGamma(0) " + fix(dg_formula) + " / " + fix(fp.delta_gamma[0]) +
                              ", strobo " + sci(sdev);
                 },
                 tol::counter_seconds);
  }

  CheckResult floquet_spectrum() {
    return timed("AC3", "Floquet generator spectrum {0, -5, -2.5 +- 2i}", [&](CheckResult& r) {
      const std::array<Complex, 4> expected = {Complex(0, 0), Complex(-2.5, 2), Complex(-2.5, -2), Complex(-5, 0)};
      // H_3 coefficient sqrt2 corresponds to Omega = 2 in the physical units of the hamiltonian.
      const FloquetData direct = floquet_data(qubit_liouvillian(2.0, 2.0, 3.0));
      const QubitDriving d = counter_oscillating(2.0, 3.0, 0.5, 1.0, 2.0, -std::numbers::sqrt2);
      const FloquetData driven = floquet_generator(floquet_params(d, {0.0, 1.7}), 1);
      const auto cf = closed_form_spectrum(5.0, 2.0);
      double dev = 0.0;
      for (int i = 0; i < 4; ++i) {
        const Complex e = expected[static_cast<std::size_t>(i)];
        dev = std::max({dev, std::abs(direct.spectrum(i) - e), std::abs(driven.spectrum(i) - e)});
        bool found = false;
        for (const Complex& c : cf) found = found || std::abs(c - e) < tol::spectrum;
        if (!found) dev = std::max(dev, 1.0);
      }
      r.metrics = Json{{"max_eigenvalue_deviation", dev}};
      r.passed = dev < tol::spectrum;
      r.detail = "max |lambda - lambda_expected| " + sci(dev);
    });
  }

  CheckResult incoherent_driving() {
    return timed("AC4", "incoherent driving: canonical-coordinate map vs ODE populations", [&](CheckResult& r) {
      double err = 0.0, norm = 0.0;
      CMatrix up = CMatrix::Zero(2, 2);
      up(0, 0) = 1.0;
      const std::vector<CMatrix> starts = {CMatrix::Identity(2, 2) / 2.0, up};
      const std::vector<double> grid = linear_grid(-2.0, 8.0, 101);
      for (double ts : {2.0, 0.5, 0.05}) {
        const auto maps = incoherent_maps(0.3, ts, 1.0, -2.0, grid);
        const LiouvillianSpec spec = to_spec(incoherent(0.3, ts, 1.0));
        double e_ts = 0.0;
        for (const CMatrix& rho0 : starts) {
          const Trajectory tr = evolve(spec, rho0, grid, tight_config());
          for (std::size_t i = 0; i < grid.size(); ++i) {
            const Populations p = populations(maps[i].map, rho0);
            const CMatrix rho = tr.rho(i);
            e_ts = std::max({e_ts, std::abs(p.up - rho(0, 0).real()), std::abs(p.down - rho(1, 1).real())});
            norm = std::max(norm, std::abs(p.up + p.down - 1.0));
          }
        }
        r.metrics["population_error_ts_" + detail::gfmt(ts)] = e_ts;
        err = std::max(err, e_ts);
      }
      r.metrics["max_population_error"] = err;
      r.metrics["max_normalisation_error"] = norm;
      r.passed = err < tol::populations && norm < tol::normalisation;
      r.detail = "population error " + sci(err) + ", |P_up + P_down - 1| " + sci(norm);
    }, tol::incoherent_seconds);
  }

  CheckResult magnus_scaling() {
    return timed("AC5", "high-frequency expansion: order-2 error exponent and first-order shift", [&](CheckResult& r) {
      const std::vector<double> ws = {10.0, 20.0, 40.0};
      std::vector<double> errs;
      double shift_dev = 0.0;
      for (double w : ws) {
        const QubitDriving d = counter_oscillating(2.0, 3.0, 0.5, w);
        const FourierModes fm = fourier_modes(to_spec(d), 4, 1024);
        const double dg = counter_oscillating_delta_gamma(0.0, 0.5, w, 5.0);
        const Superoperator exact = qubit_liouvillian(std::numbers::sqrt2, 2.0 - dg, 3.0 + dg);
        errs.push_back((magnus_second_order(fm, 0.0, 0.0, 2).LF - exact).norm());
        if (w == 10.0) {
          const QubitParams p = project_qubit_params(magnus_second_order(fm, 0.0, 0.0, 1).LF);
          shift_dev = std::max(std::abs((2.0 - p.gamma_plus) - tol::first_order_shift),
                               std::abs((p.gamma_minus - 3.0) - tol::first_order_shift));
          r.metrics["first_order_shift"] = 2.0 - p.gamma_plus;
        }
      }
      double sx = 0, sy = 0, sxx = 0, sxy = 0;
      for (std::size_t i = 0; i < ws.size(); ++i) {
        const double x = std::log(ws[i]), y = std::log(errs[i]);
        sx += x; sy += y; sxx += x * x; sxy += x * y;
      }
      const double n = static_cast<double>(ws.size());
      const double slope = -(n * sxy - sx * sy) / (n * sxx - sx * sx);
      r.metrics["errors"] = errs;
      r.metrics["exponent"] = slope;
      r.passed = std::abs(slope - tol::magnus_slope) <= tol::magnus_slope_band && shift_dev < tol::first_order_shift_tol;
      r.detail = "exponent " + fix(slope) + ", first-order shift deviation " + sci(shift_dev);
    });
  }

  CheckResult oracle_triangle() {
    return timed("AC6", "propagate / Bloch / rotating frame agree on <sigma_3>(t), 20 random qubits",
                 [&](CheckResult& r) {
                   std::mt19937_64 rng(20260214);
                   std::uniform_real_distribution<double> u(0.0, 1.0);
                   double worst = 0.0;
                   const std::vector<double> grid = linear_grid(0.0, 4.0, 41);
                   for (int k = 0; k < 20; ++k) {
                     const double om0 = 2.0 * u(rng) - 1.0, om1 = u(rng), w = 0.5 + 2.5 * u(rng);
                     const double gp = 0.1 + u(rng), gm = 0.1 + u(rng);
                     const double ap = gp * u(rng), am = gm * u(rng), g3 = 0.3 * u(rng), phase = 6.0 * u(rng);
                     QubitDriving d;
                     d.omega = [=](double t) { return om0 + om1 * std::cos(w * t); };
                     d.gamma_plus = [=](double t) { return gp + ap * std::sin(w * t + phase); };
                     d.gamma_minus = [=](double t) { return gm - am * std::sin(w * t); };
                     if (k % 2) d.gamma3 = [=](double t) { return g3 * (1.0 + 0.5 * std::cos(2.0 * w * t)); };
                     const QubitBlochState s0{0.3 * (u(rng) - 0.5), 0.3 * (u(rng) - 0.5), 0.2 + 0.6 * u(rng)};
                     CMatrix rho0(2, 2);
                     rho0 << s0.rho11, Complex(s0.a, -s0.b), Complex(s0.a, s0.b), 1.0 - s0.rho11;

                     const LiouvillianSpec spec = to_spec(d);
                     const Trajectory tr = evolve(spec, rho0, grid, tight_config());
                     const CoherenceSystem sys(spec);
                     const OperatorBasis& b = spec.space->basis();
                     const BlochTrajectory bt = bloch_evolve(sys, coherence_vector(b, rho0), grid, tight_config());
                     const auto hand = qubit_bloch_equations(d).evolve(s0, grid, tight_config());
                     const RotatingFrameSolution rf =
                         solve_rotating_frame(d, FrameTargets{om0, gp, gm, k % 2 ? g3 : 0.0}, FrameInit{}, grid);
                     for (std::size_t i = 0; i < grid.size(); ++i) {
                       const double a = (tr.rho(i) * pauli::z()).trace().real();
                       const double bl = (state_from_coherence(b, bt.v[i]) * pauli::z()).trace().real();
                       const double hb = hand[i].sigma3();
                       const double ex =
                           (devectorize(rotating_frame_map(rf, i, 0) * vectorize(rho0)) * pauli::z()).trace().real();
                       worst = std::max({worst, std::abs(a - bl), std::abs(a - hb), std::abs(a - ex),
                                         std::abs(bl - ex)});
                     }
                   }
                   r.metrics = Json{{"scenarios", 20}, {"max_sigma3_disagreement", worst}};
                   r.passed = worst < tol::triangle;
                   r.detail = "max disagreement " + sci(worst);
                 },
                 tol::triangle_seconds);
  }

  CheckResult carnot_engine() {
    return timed("AC7", "Carnot engine: equilibrium endpoints at T = 200, delta_A ~ c / T", [&](CheckResult& r) {
      const EngineData& e = engine_data(true);
      double worst = 0.0;
      for (const CycleRecord& rec : e.floquet)
        if (rec.period == 200.0) worst = endpoint_deviation(rec, carnot_protocol(1.8, 1.3, 1.0, 0.5, 200.0), r);
      const AreaDeviation ad = area_deviation(e.floquet, e.qs.area);
      r.metrics["c"] = ad.c;
      r.metrics["exponent"] = ad.exponent;
      r.metrics["delta_A"] = ad.delta;
      r.passed = worst < tol::endpoint && std::abs(ad.exponent - tol::exponent) <= tol::exponent_band &&
                 ad.c >= tol::carnot_c_lo && ad.c <= tol::carnot_c_hi;
      r.detail = "endpoint deviation " + pct(worst) + ", exponent " + fix(ad.exponent) + ", c " + fix(ad.c);
    }, tol::engine_seconds);
  }

  CheckResult otto_engine() {
    return timed("AC8", "Otto engine: delta_A ~ c / T", [&](CheckResult& r) {
      const EngineData& e = engine_data(false);
      const AreaDeviation ad = area_deviation(e.floquet, e.qs.area);
      r.metrics["c"] = ad.c;
      r.metrics["exponent"] = ad.exponent;
      r.metrics["delta_A"] = ad.delta;
      r.passed = std::abs(ad.exponent - tol::exponent) <= tol::exponent_band && ad.c >= tol::otto_c_lo &&
                 ad.c <= tol::otto_c_hi;
      r.detail = "exponent " + fix(ad.exponent) + ", c " + fix(ad.c);
    }, tol::engine_seconds);
  }

  CheckResult thermodynamics() {
    return timed("AC9", "first law, detached strokes, Carnot bound", [&](CheckResult& r) {
      double fl = 0.0, fli = 0.0, detached = 0.0, ratio = 0.0;
      for (bool carnot : {true, false}) {
        const EngineData& e = engine_data(carnot);
        for (const CycleRecord& rec : e.direct) {
          fl = std::max(fl, rec.first_law_residual);
          fli = std::max(fli, rec.first_law_integrated_residual);
        }
        for (const auto* set : {&e.direct, &e.floquet})
          for (const CycleRecord& rec : *set) {
            detached = std::max(detached, rec.max_detached_heat);
            if (carnot) ratio = std::max(ratio, rec.work_ratio);
          }
      }
      r.metrics = Json{{"first_law_residual", fl},
                       {"first_law_integrated_residual", fli},
                       {"max_detached_heat", detached},
                       {"carnot_max_work_ratio", ratio}};
      r.passed = fl < tol::first_law && fli < tol::first_law && detached == 0.0 && ratio <= tol::carnot_ratio && ratio > 0;
      r.detail = "first law " + sci(std::max(fl, fli)) + ", detached dQ " + sci(detached) + ", |W|/|Q_hot| " + fix(ratio);
    });
  }

  CheckResult cptp(bool include_engines) {
    return timed("AC10", "one-period maps of the shipped scenarios are CPTP", [&](CheckResult& r) {
      double min_eig = 1.0, trace = 0.0;
      int maps = 0;
      auto account = [&](const std::string& label, const Superoperator& m) {
        const CptpReport rep = cptp_diagnostics(m);
        r.metrics["maps"][label] = Json{{"choi_min_eigenvalue", rep.choi_min_eigenvalue},
                                        {"trace_residual", rep.trace_residual}};
        min_eig = std::min(min_eig, rep.choi_min_eigenvalue);
        trace = std::max(trace, rep.trace_residual);
        ++maps;
      };
      for (const Config& c : opt_.scenario_configs) {
        const std::string sc = c.str("scenario");
        const IntegratorConfig ic = integrator_from(c);
        if (sc == "counter_oscillating") {
          const QubitDriving d = counter_oscillating_from(c);
          account(sc, dynamical_map(to_spec(d), 0.0, *d.period, ic));
        } else if (sc == "incoherent") {
          // Not periodic: the map over the configured window stands in for the one-period map.
          const double t0 = c.real("params.t0"), t1 = c.real("params.t_end");
          for (double ts : c.reals("params.switch_times")) {
            const QubitDriving d = incoherent(c.real("params.amplitude"), ts, c.real("params.omega"));
            account(sc + "_ts_" + detail::gfmt(ts), dynamical_map(to_spec(d), t0, t1, ic));
            account(sc + "_ts_" + detail::gfmt(ts) + "_canonical",
                    incoherent_map(c.real("params.amplitude"), ts, c.real("params.omega"), t0, t1).map);
          }
        } else if (sc == "carnot" || sc == "otto") {
          if (!include_engines) continue;
          const auto make = engine_factory(c);
          for (double t : c.reals("sweep.periods")) {
            const EngineProtocol p = make(t);
            account(sc + "_T" + detail::gfmt(t), dynamical_map(to_spec(detailed_balance_rates(p)), 0.0, t, ic));
          }
        } else if (sc == "custom") {
          const LiouvillianSpec spec = custom_spec(c);
          const double period = spec.period ? *spec.period : c.real("run.t_end");
          account(sc, dynamical_map(spec, 0.0, period, ic));
        }
      }
      r.metrics["count"] = maps;
      r.metrics["min_choi_eigenvalue"] = min_eig;
      r.metrics["max_trace_residual"] = trace;
      r.passed = maps > 0 && min_eig >= tol::choi_floor && trace < tol::trace;
      r.detail = std::to_string(maps) + " maps, min Choi eigenvalue " + sci(min_eig) + ", trace residual " + sci(trace);
    });
  }

  std::vector<CheckResult> run_all() {
    std::vector<CheckResult> out = {algebra(),          counter_oscillating_exactness(), floquet_spectrum(),
                                    incoherent_driving(), magnus_scaling(),              oracle_triangle()};
    const bool full = opt_.level == VerifyLevel::full;
    if (full) {
      out.push_back(carnot_engine());
      out.push_back(otto_engine());
      out.push_back(thermodynamics());
    }
    out.push_back(cptp(full));
    return out;
  }

  static Json report(const std::vector<CheckResult>& checks, VerifyLevel level) {
    Json j;
    j["level"] = level == VerifyLevel::full ? "full" : "fast";
    bool ok = true;
    Json arr = Json::array();
    for (const auto& c : checks) {
      ok = ok && c.passed;
      arr.push_back(Json{{"id", c.id},
                         {"name", c.name},
                         {"passed", c.passed},
                         {"seconds", c.seconds},
                         {"detail", c.detail},
                         {"metrics", c.metrics}});
    }
    j["passed"] = ok;
    j["checks"] = arr;
    return j;
  }

  static std::string line(const CheckResult& c) {
    return std::string(c.passed ? "[PASS] " : "[FAIL] ") + c.id + " " + c.name + ": " + c.detail;
  }

 private:
  struct EngineData {
    std::vector<CycleRecord> floquet, direct;
    CycleRecord qs;
  };

  const EngineData& engine_data(bool carnot) {
    auto& slot = carnot ? carnot_ : otto_;
    if (!slot) {
      std::function<EngineProtocol(double)> make;
      if (carnot) make = [](double t) { return carnot_protocol(1.8, 1.3, 1.0, 0.5, t); };
      else make = [](double t) { return otto_protocol(1.8, 1.3, 1.0, 1.5, t); };
      const std::vector<double> periods = {25.0, 50.0, 100.0, 200.0, 400.0};
      EngineData e;
      CycleOptions opt;
      e.floquet = engine_sweep(make, periods, CycleMethod::floquet, opt, opt_.parallel);
      e.direct = engine_sweep(make, periods, CycleMethod::direct, opt, opt_.parallel);
      e.qs = quasi_static_reference(make(1.0), opt.samples_per_stroke);
      slot = std::move(e);
    }
    return *slot;
  }

  // Relative deviation of the isotherm start/end energies from (Omega/2) tanh(Omega/2T).
  static double endpoint_deviation(const CycleRecord& rec, const EngineProtocol& p, CheckResult& r) {
    const auto per = static_cast<std::size_t>(rec.samples_per_stroke + 1);
    double worst = 0.0;
    Json pts = Json::array();
    for (int s : {p.hot_stroke, p.cold_stroke})
      for (int end : {0, 1}) {
        const std::size_t i = static_cast<std::size_t>(s) * per + (end ? per - 1 : 0);
        const double eq = equilibrium_energy(rec.omega[i], *p.temperature_at(s, end));
        const double dev = std::abs(rec.energy[i] / eq - 1.0);
        pts.push_back(Json{{"stroke", s}, {"end", end}, {"energy", rec.energy[i]}, {"equilibrium", eq}, {"rel_dev", dev}});
        worst = std::max(worst, dev);
      }
    r.metrics["isotherm_endpoints_T200"] = pts;
    return worst;
  }

  template <class F>
  CheckResult timed(const std::string& id, const std::string& name, F&& body, std::optional<double> limit = {}) {
    CheckResult r;
    r.id = id;
    r.name = name;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      body(r);
    } catch (const std::exception& e) {
      r.passed = false;
      r.detail = std::string("error: ") + e.what();
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (limit && r.seconds >= *limit) {
      r.passed = false;
      r.detail += " (runtime " + fix(r.seconds) + " s exceeds " + fix(*limit) + " s)";
    }
    return r;
  }

  static std::string sci(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3e", v);
    return buf;
  }
  static std::string fix(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
  }
  static std::string pct(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f%%", 100.0 * v);
    return buf;
  }

  VerifyOptions opt_;
  std::optional<EngineData> carnot_, otto_;
};

}  // namespace lindblad::cli
