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
#include <cstdio>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

#include <json.hpp>

#include "lindblad/cli/config.hpp"
#include "lindblad/cli/output.hpp"
#include "lindblad/cli/svg.hpp"
#include "lindblad/lindblad.hpp"

namespace lindblad::cli {

using Json = nlohmann::ordered_json;

struct ScenarioContext {
  const Config& cfg;
  ArtifactSink& sink;
  bool plots = true;
  int parallel = 1;
};

struct Scenario {
  std::string name;
  std::string description;
  std::vector<KeySpec> keys;  // scenario-specific; common keys are added by schema_for
  std::function<Json(ScenarioContext&)> run;
};

inline std::vector<KeySpec> common_keys() {
  return {
      {"scenario", "", "scenario name", true},
      {"output.dir", "out", "output directory"},
      {"output.plots", "true", "write SVG plots"},
      {"run.parallel", "1", "worker threads for sweeps"},
      {"run.seed", "0", "reserved; all algorithms are deterministic"},
      {"integrator.rel_tol", "1e-10", "ODE relative tolerance"},
      {"integrator.abs_tol", "1e-12", "ODE absolute tolerance"},
      {"integrator.max_step", "inf", "ODE maximum step"},
  };
}

inline IntegratorConfig integrator_from(const Config& c) {
  IntegratorConfig ic;
  ic.rel_tol = c.real("integrator.rel_tol");
  ic.abs_tol = c.real("integrator.abs_tol");
  ic.max_step = c.real("integrator.max_step");
  try {
    ic.validate();
  } catch (const InvalidArgument& e) {
    throw ConfigError(e.what());
  }
  return ic;
}

namespace detail {

inline std::string gfmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

inline CMatrix diagonal_state(double p_up) {
  if (!(p_up >= 0.0 && p_up <= 1.0)) throw ConfigError("initial population must lie in [0, 1]");
  CMatrix rho = CMatrix::Zero(2, 2);
  rho(0, 0) = p_up;
  rho(1, 1) = 1.0 - p_up;
  return rho;
}

inline Json cptp_json(const CptpReport& r) {
  return Json{{"choi_min_eigenvalue", r.choi_min_eigenvalue},
              {"trace_residual", r.trace_residual},
              {"hermiticity_residual", r.hermiticity_residual},
              {"passes", r.passes()}};
}

inline void require_positive(const Config& c, const std::string& key) {
  if (!(c.real(key) > 0.0)) throw ConfigError("'" + key + "' must be > 0");
}

}  // namespace detail

// ---------------------------------------------------------------------------
// counter_oscillating
// ---------------------------------------------------------------------------

inline QubitDriving counter_oscillating_from(const Config& c) {
  try {
    return counter_oscillating(c.real("params.gamma_plus_bar"), c.real("params.gamma_minus_bar"),
                               c.real("params.amplitude"), c.real("params.omega_drive"), c.real("params.omega_bar"),
                               c.real("params.omega_delta"));
  } catch (const InvalidArgument& e) {
    throw ConfigError(e.what());
  }
}

inline Json run_counter_oscillating(ScenarioContext& ctx) {
  const Config& c = ctx.cfg;
  const QubitDriving d = counter_oscillating_from(c);
  const int periods = c.integer("run.periods");
  const int spp = c.integer("run.samples_per_period");
  if (periods < 1 || spp < 2) throw ConfigError("run.periods >= 1 and run.samples_per_period >= 2 required");
  const double period = *d.period;
  const IntegratorConfig ic = integrator_from(c);
  const CMatrix rho0 = detail::diagonal_state(c.real("params.initial_p_up"));
  const LiouvillianSpec spec = to_spec(d);

  std::vector<double> grid;
  for (int i = 0; i <= periods * spp; ++i) grid.push_back(period * i / spp);
  const Trajectory tr = evolve(spec, rho0, grid, ic);
  const std::vector<double> s3 = tr.observable(pauli::z());

  const FloquetParams fp = floquet_params(d, {0.0});
  const FloquetData fd = floquet_data(fp.generator(0));
  const RotatingFrameSolution rf = periodic_fixed_point(d, grid);

  CsvTable series({"t", "sigma3_exact", "sigma3_strobo_predicted", "sigma3_rotating_frame", "stroboscopic"});
  CsvTable strobo({"m", "t", "sigma3_exact", "sigma3_floquet", "abs_diff"});
  double max_strobo = 0.0, max_frame = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const CMatrix pred = devectorize(matrix_exp(fp.generator(0), grid[i]) * vectorize(rho0));
    const CMatrix frame = devectorize(rotating_frame_map(rf, i, 0) * vectorize(rho0));
    const double sp = (pred * pauli::z()).trace().real();
    const double sf = (frame * pauli::z()).trace().real();
    const bool at_period = i % static_cast<std::size_t>(spp) == 0;
    series.row({grid[i], s3[i], sp, sf, at_period ? 1.0 : 0.0});
    max_frame = std::max(max_frame, std::abs(sf - s3[i]));
    if (at_period) {
      strobo.row({static_cast<double>(i / spp), grid[i], s3[i], sp, std::abs(sp - s3[i])});
      max_strobo = std::max(max_strobo, std::abs(sp - s3[i]));
    }
  }

  std::vector<double> phases;
  for (int i = 0; i <= spp; ++i) phases.push_back(period * i / spp);
  const FloquetParams fpp = floquet_params(d, phases);
  const double amp = c.real("params.amplitude"), w = c.real("params.omega_drive");
  CsvTable params({"t0", "delta_gamma", "delta_gamma_closed_form", "gamma_plus_F", "gamma_minus_F"});
  for (std::size_t i = 0; i < phases.size(); ++i)
    params.row({phases[i], fpp.delta_gamma[i], counter_oscillating_delta_gamma(phases[i], amp, w, fpp.gamma_total()),
                fpp.gamma_plus_F[i], fpp.gamma_minus_F[i]});

  ctx.sink.csv("sigma3.csv", series, "<sigma_3>(t): direct propagation, exp(L_F(0) t) prediction, rotating frame");
  ctx.sink.csv("stroboscopic.csv", strobo, "stroboscopic samples t = m T");
  ctx.sink.csv("floquet_params.csv", params, "Floquet rates versus phase t0");
  if (ctx.plots) {
    PlotSpec p{"counter-oscillating polarisers", "t", "<sigma_3>", false, false, {}};
    p.series.push_back({grid, s3, "exact"});
    p.series.push_back({grid, series.column("sigma3_strobo_predicted"), "exp(L_F t) prediction", false, true});
    p.series.push_back({strobo.column("t"), strobo.column("sigma3_exact"), "stroboscopic", true});
    ctx.sink.text("sigma3.svg", render_svg(p), "svg");
  }

  Json spectrum = Json::array();
  for (int i = 0; i < fd.spectrum.size(); ++i) spectrum.push_back({fd.spectrum(i).real(), fd.spectrum(i).imag()});
  Json nonphys = fpp.nonphysical_phases;
  return Json{{"delta_gamma_t0", fp.delta_gamma[0]},
              {"gamma_plus_F_t0", fp.gamma_plus_F[0]},
              {"gamma_minus_F_t0", fp.gamma_minus_F[0]},
              {"floquet_spectrum", spectrum},
              {"stroboscopic_steady_sigma3", (fd.steady_state * pauli::z()).trace().real()},
              {"max_stroboscopic_deviation", max_strobo},
              {"max_rotating_frame_deviation", max_frame},
              {"nonphysical_phases", nonphys},
              {"one_period_map", detail::cptp_json(cptp_diagnostics(dynamical_map(spec, 0.0, period, ic)))}};
}

// ---------------------------------------------------------------------------
// incoherent
// ---------------------------------------------------------------------------

inline Json run_incoherent(ScenarioContext& ctx) {
  const Config& c = ctx.cfg;
  const double amp = c.real("params.amplitude"), om = c.real("params.omega");
  const double t0 = c.real("params.t0"), t1 = c.real("params.t_end");
  const int samples = c.integer("run.samples");
  if (!(t1 > t0) || samples < 2) throw ConfigError("params.t_end > params.t0 and run.samples >= 2 required");
  const std::vector<double> switches = c.reals("params.switch_times");
  if (switches.empty()) throw ConfigError("params.switch_times must list at least one value");
  const IntegratorConfig ic = integrator_from(c);
  const CMatrix rho0 = detail::diagonal_state(c.real("params.initial_p_up"));
  const std::vector<double> grid = linear_grid(t0, t1, samples);

  Json per = Json::array();
  PlotSpec plot{"incoherent driving", "t", "P_up", false, false, {}};
  for (double ts : switches) {
    QubitDriving d;
    try {
      d = incoherent(amp, ts, om);
    } catch (const InvalidArgument& e) {
      throw ConfigError(e.what());
    }
    const auto maps = incoherent_maps(amp, ts, om, t0, grid);
    const Trajectory tr = evolve(to_spec(d), rho0, grid, ic);
    CsvTable t({"t", "p_up_map", "p_down_map", "p_up_ode", "p_down_ode", "sigma3", "pi1", "pi2"});
    double err = 0.0, norm = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
      const Populations pm = populations(maps[i].map, rho0);
      const CMatrix r = tr.rho(i);
      const double pu = r(0, 0).real(), pd = r(1, 1).real();
      t.row({grid[i], pm.up, pm.down, pu, pd, pm.up - pm.down, maps[i].pi1, maps[i].pi2});
      err = std::max({err, std::abs(pm.up - pu), std::abs(pm.down - pd)});
      norm = std::max(norm, std::abs(pm.up + pm.down - 1.0));
    }
    const std::string name = "populations_ts_" + detail::gfmt(ts) + ".csv";
    ctx.sink.csv(name, t, "populations, canonical-coordinate map vs ODE, t_s = " + detail::gfmt(ts));
    plot.series.push_back({grid, t.column("p_up_map"), "t_s = " + detail::gfmt(ts)});
    per.push_back(Json{{"switch_time", ts},
                       {"file", name},
                       {"max_population_error", err},
                       {"max_normalisation_error", norm},
                       {"window_map", detail::cptp_json(cptp_diagnostics(maps.back().map))}});
  }
  if (ctx.plots) ctx.sink.text("populations.svg", render_svg(plot), "svg");
  return Json{{"switch_times", per}};
}

// ---------------------------------------------------------------------------
// carnot / otto
// ---------------------------------------------------------------------------

inline std::function<EngineProtocol(double)> engine_factory(const Config& c) {
  const std::string sc = c.str("scenario");
  if (sc == "carnot") {
    const double a = c.real("params.omega_a"), b = c.real("params.omega_b");
    const double th = c.real("params.t_hot"), tc = c.real("params.t_cold");
    try {
      carnot_protocol(a, b, th, tc, 1.0);
    } catch (const InvalidArgument& e) {
      throw ConfigError(e.what());
    }
    return [=](double t) { return carnot_protocol(a, b, th, tc, t); };
  }
  const double a = c.real("params.omega1"), b = c.real("params.omega2");
  const double ta = c.real("params.t_a"), tb = c.real("params.t_b");
  try {
    otto_protocol(a, b, ta, tb, 1.0);
  } catch (const InvalidArgument& e) {
    throw ConfigError(e.what());
  }
  return [=](double t) { return otto_protocol(a, b, ta, tb, t); };
}

inline CsvTable cycle_table(const CycleRecord& r) {
  const bool fl = !r.gamma_plus_F.empty();
  std::vector<std::string> h = {"phase", "stroke", "omega", "inv_omega", "omega_dot", "sigma3", "energy", "power",
                                "heat_flow"};
  if (fl) {
    h.push_back("heat_flow_printed");
    h.push_back("gamma_plus_F");
    h.push_back("gamma_minus_F");
  }
  CsvTable t(h);
  for (std::size_t i = 0; i < r.phase.size(); ++i) {
    std::vector<double> row = {r.phase[i], static_cast<double>(r.stroke[i]), r.omega[i], 1.0 / r.omega[i],
                               r.omega_dot[i], r.sigma3[i], r.energy[i], r.power[i], r.heat_flow[i]};
    if (fl) {
      row.push_back(r.heat_flow_printed[i]);
      row.push_back(r.gamma_plus_F[i]);
      row.push_back(r.gamma_minus_F[i]);
    }
    t.row(row);
  }
  return t;
}

inline CycleMethod cycle_method_from(const Config& c) {
  const std::string m = c.str("run.method");
  if (m == "floquet") return CycleMethod::floquet;
  if (m == "direct") return CycleMethod::direct;
  throw ConfigError("run.method must be 'floquet' or 'direct', got '" + m + "'");
}

inline Json run_engine(ScenarioContext& ctx) {
  const Config& c = ctx.cfg;
  const auto make = engine_factory(c);
  const std::vector<double> periods = c.reals("sweep.periods");
  for (double t : periods)
    if (!(t > 0.0)) throw ConfigError("sweep.periods must be positive");
  CycleOptions opt;
  opt.samples_per_stroke = c.integer("run.samples_per_stroke");
  if (opt.samples_per_stroke < 2 || opt.samples_per_stroke % 2)
    throw ConfigError("run.samples_per_stroke must be even and >= 2");
  opt.integrator = integrator_from(c);
  const CycleMethod method = cycle_method_from(c);

  const std::vector<CycleRecord> recs = engine_sweep(make, periods, method, opt, ctx.parallel);
  const CycleRecord qs = quasi_static_reference(make(1.0), opt.samples_per_stroke);
  ctx.sink.csv("quasi_static.csv", cycle_table(qs), "quasi-static reference orbit");

  PlotSpec orbit{c.str("scenario") + " cycle", "1/Omega", "E", false, false, {}};
  {
    std::vector<double> x(qs.omega.size());
    for (std::size_t i = 0; i < x.size(); ++i) x[i] = 1.0 / qs.omega[i];
    orbit.series.push_back({x, qs.energy, "quasi-static", false, true});
  }
  Json per = Json::array();
  for (std::size_t k = 0; k < recs.size(); ++k) {
    const CycleRecord& r = recs[k];
    const std::string name = "cycle_T" + detail::gfmt(r.period) + ".csv";
    const CsvTable t = cycle_table(r);
    ctx.sink.csv(name, t, std::string("limit cycle (") + to_string(method) + " path)");
    orbit.series.push_back({t.column("inv_omega"), r.energy, "T = " + detail::gfmt(r.period)});
    const EngineProtocol p = make(r.period);
    const Superoperator map = dynamical_map(to_spec(detailed_balance_rates(p)), 0.0, p.period, opt.integrator);
    per.push_back(Json{{"period", r.period},
                       {"file", name},
                       {"work", r.work},
                       {"heat_hot", r.heat_hot},
                       {"heat_cold", r.heat_cold},
                       {"stroke_heat", r.stroke_heat},
                       {"efficiency", r.efficiency},
                       {"work_ratio", r.work_ratio},
                       {"area", r.area},
                       {"closure_gap", r.closure_gap},
                       {"first_law_residual", r.first_law_residual},
                       {"first_law_integrated_residual", r.first_law_integrated_residual},
                       {"max_detached_heat", r.max_detached_heat},
                       {"tau", r.tau},
                       {"one_period_map", detail::cptp_json(cptp_diagnostics(map))}});
  }

  Json fit = nullptr;
  if (recs.size() >= 4) {
    const AreaDeviation ad = area_deviation(recs, qs.area);
    CsvTable t({"period", "area", "delta_A", "fit_c_over_T"});
    for (std::size_t i = 0; i < ad.periods.size(); ++i)
      t.row({ad.periods[i], qs.area * (1.0 - ad.delta[i]), ad.delta[i], ad.c / ad.periods[i]});
    ctx.sink.csv("deltaA.csv", t, "cycle-area deviation 1 - A/A_qs and the fitted c/T");
    if (ctx.plots) {
      PlotSpec p{"cycle-area deviation", "T", "delta_A", true, true, {}};
      p.series.push_back({ad.periods, ad.delta, "computed", true});
      p.series.push_back({ad.periods, t.column("fit_c_over_T"), "c/T, c = " + detail::gfmt(ad.c)});
      ctx.sink.text("deltaA.svg", render_svg(p), "svg");
    }
    fit = Json{{"c", ad.c}, {"exponent", ad.exponent}, {"monotone", ad.monotone}};
  }
  if (ctx.plots) ctx.sink.text("energy_vs_inv_omega.svg", render_svg(orbit), "svg");
  return Json{{"method", to_string(method)}, {"area_quasi_static", qs.area}, {"fit", fit}, {"periods", per}};
}

// ---------------------------------------------------------------------------
// custom: constant H coefficients plus a cosine drive, gamma(t) = G0 + sin(w t) G1
// ---------------------------------------------------------------------------

inline CMatrix parse_matrix(const Config& c, const std::string& base, int m) {
  const std::vector<double> re = c.reals(base + ".re"), im = c.reals(base + ".im");
  CMatrix g = CMatrix::Zero(m, m);
  const auto need = static_cast<std::size_t>(m) * static_cast<std::size_t>(m);
  if (!re.empty() && re.size() != need)
    throw ConfigError("'" + base + ".re' needs " + std::to_string(need) + " row-major entries");
  if (!im.empty() && im.size() != need)
    throw ConfigError("'" + base + ".im' needs " + std::to_string(need) + " row-major entries");
  for (int k = 0; k < m; ++k)
    for (int l = 0; l < m; ++l) {
      const std::size_t i = static_cast<std::size_t>(k) * m + l;
      g(k, l) = {re.empty() ? 0.0 : re[i], im.empty() ? 0.0 : im[i]};
    }
  return g;
}

inline RVector parse_vector(const Config& c, const std::string& key, int m) {
  const std::vector<double> v = c.reals(key);
  if (v.empty()) return RVector::Zero(m);
  if (static_cast<int>(v.size()) != m) throw ConfigError("'" + key + "' needs " + std::to_string(m) + " entries");
  return Eigen::Map<const RVector>(v.data(), m);
}

inline LiouvillianSpec custom_spec(const Config& c) {
  const int n = c.integer("custom.n");
  if (n < 2 || n > 6) throw ConfigError("custom.n must be in [2, 6]");
  const int m = n * n - 1;
  const RVector h0 = parse_vector(c, "custom.h", m), h1 = parse_vector(c, "custom.h1", m);
  const CMatrix g0 = parse_matrix(c, "custom.gamma0", m), g1 = parse_matrix(c, "custom.gamma1", m);
  const double w = c.real("custom.omega_drive");
  if (w < 0.0) throw ConfigError("custom.omega_drive must be >= 0");
  LiouvillianSpec s;
  s.space = make_liouville_space(n);
  s.hamiltonian = [=](double t) { return (h0 + std::cos(w * t) * h1).eval(); };
  s.dissipation = [=](double t) { return (g0 + std::sin(w * t) * g1).eval(); };
  if (w > 0.0) s.period = 2.0 * std::numbers::pi / w;
  return s;
}

inline Json run_custom(ScenarioContext& ctx) {
  const Config& c = ctx.cfg;
  const LiouvillianSpec spec = custom_spec(c);
  const int n = spec.n(), m = n * n - 1;
  const double t1 = c.real("run.t_end");
  const int samples = c.integer("run.samples");
  if (!(t1 > 0.0) || samples < 2) throw ConfigError("run.t_end > 0 and run.samples >= 2 required");
  const std::vector<double> grid = linear_grid(0.0, t1, samples);

  // Validate on the output grid refined 8x so that short violations are not stepped over.
  const std::vector<double> check = linear_grid(0.0, t1, 8 * (samples - 1) + 1);
  try {
    validate_spec(spec, check);
  } catch (const InvalidSpec& e) {
    throw ConfigError(std::string("custom scenario: ") + e.what());
  }

  const OperatorBasis& basis = spec.space->basis();
  const RVector v0 = parse_vector(c, "custom.v0", m);
  const CMatrix rho0 = state_from_coherence(basis, v0);
  Eigen::SelfAdjointEigenSolver<CMatrix> es(rho0, Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < -1e-10) throw ConfigError("custom.v0 does not describe a positive state");

  const IntegratorConfig ic = integrator_from(c);
  const Trajectory tr = evolve(spec, rho0, grid, ic);
  std::vector<std::string> header = {"t"};
  for (int k = 1; k <= m; ++k) header.push_back("v" + std::to_string(k));
  header.push_back("purity");
  if (n == 2) header.push_back("sigma3");
  CsvTable t(header);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const CMatrix rho = tr.rho(i);
    const RVector v = coherence_vector(basis, rho);
    std::vector<double> row = {grid[i]};
    for (int k = 0; k < m; ++k) row.push_back(v(k));
    row.push_back((rho * rho).trace().real());
    if (n == 2) row.push_back((rho * pauli::z()).trace().real());
    t.row(row);
  }
  ctx.sink.csv("coherence.csv", t, "coherence vector v_k = tr(rho F_k) and purity");
  if (ctx.plots && n == 2) {
    PlotSpec p{"custom qubit", "t", "<sigma_3>", false, false, {}};
    p.series.push_back({grid, t.column("sigma3"), "<sigma_3>"});
    ctx.sink.text("sigma3.svg", render_svg(p), "svg");
  }
  Json out{{"n", n},
           {"max_trace_deviation", tr.max_trace_deviation},
           {"min_eigenvalue", tr.min_eigenvalue},
           {"warnings", tr.warnings}};
  if (spec.period)
    out["one_period_map"] = detail::cptp_json(cptp_diagnostics(dynamical_map(spec, 0.0, *spec.period, ic)));
  return out;
}

// ---------------------------------------------------------------------------
// Registry
// ---------------------------------------------------------------------------

inline const std::vector<Scenario>& scenarios() {
  static const std::vector<Scenario> all = {
      {"counter_oscillating",
       "qubit with counter-oscillating polarisers: exact vs Floquet-predicted <sigma_3>(t)",
       {
           {"params.gamma_plus_bar", "2", "mean Gamma_+"},
           {"params.gamma_minus_bar", "3", "mean Gamma_-"},
           {"params.amplitude", "0.5", "polariser modulation A"},
           {"params.omega_drive", "1", "drive frequency w"},
           {"params.omega_bar", "1.4142135623730951", "mean Omega"},
           {"params.omega_delta", "-1.4142135623730951", "Omega modulation Delta"},
           {"params.initial_p_up", "1", "initial population of |up>"},
           {"run.periods", "5", "number of drive periods"},
           {"run.samples_per_period", "100", "output samples per period"},
       },
       run_counter_oscillating},
      {"incoherent",
       "qubit with tanh-switched polarisers: canonical-coordinate map vs ODE populations",
       {
           {"params.amplitude", "0.3", "rate scale A"},
           {"params.omega", "1", "qubit frequency"},
           {"params.t0", "-2", "start time"},
           {"params.t_end", "8", "end time"},
           {"params.switch_times", "2,0.5,0.05", "switching times t_s"},
           {"params.initial_p_up", "0.5", "initial population of |up>"},
           {"run.samples", "501", "output samples"},
       },
       run_incoherent},
      {"carnot",
       "finite-time qubit Carnot engine: limit cycles, quasi-static orbit, cycle-area deviation",
       {
           {"params.omega_a", "1.8", "Omega at a"},
           {"params.omega_b", "1.3", "Omega at b"},
           {"params.t_hot", "1.0", "hot bath temperature"},
           {"params.t_cold", "0.5", "cold bath temperature"},
           {"sweep.periods", "25,50,100,200,400", "cycle periods"},
           {"run.method", "floquet", "floquet | direct"},
           {"run.samples_per_stroke", "1000", "samples per stroke (even)"},
       },
       run_engine},
      {"otto",
       "finite-time qubit Otto engine: limit cycles, quasi-static orbit, cycle-area deviation",
       {
           {"params.omega1", "1.8", "Omega on the first isochore"},
           {"params.omega2", "1.3", "Omega on the second isochore"},
           {"params.t_a", "1.0", "temperature at a"},
           {"params.t_b", "1.5", "temperature at b"},
           {"sweep.periods", "25,50,100,200,400", "cycle periods"},
           {"run.method", "floquet", "floquet | direct"},
           {"run.samples_per_stroke", "1000", "samples per stroke (even)"},
       },
       run_engine},
      {"custom",
       "user-defined n-level Liouvillian: h(t) = h + cos(w t) h1, gamma(t) = G0 + sin(w t) G1",
       {
           {"custom.n", "2", "number of levels"},
           {"custom.h", "0,0,1", "constant hamiltonian coefficients h_1..h_{n^2-1}"},
           {"custom.h1", "0.5,0,0", "hamiltonian drive amplitude"},
           {"custom.gamma0.re", "0.2,0,0,0,0.2,0,0,0,0.1", "G0 real part, row-major"},
           {"custom.gamma0.im", "", "G0 imaginary part, row-major"},
           {"custom.gamma1.re", "0.1,0,0,0,0.1,0,0,0,0", "G1 real part, row-major"},
           {"custom.gamma1.im", "", "G1 imaginary part, row-major"},
           {"custom.omega_drive", "1", "drive frequency (0: time-independent)"},
           {"custom.v0", "", "initial coherence vector (empty: I/n)"},
           {"run.t_end", "10", "end time"},
           {"run.samples", "201", "output samples"},
       },
       run_custom},
  };
  return all;
}

inline const Scenario& find_scenario(const std::string& name) {
  for (const auto& s : scenarios())
    if (s.name == name) return s;
  std::string known;
  for (const auto& s : scenarios()) known += (known.empty() ? "" : ", ") + s.name;
  throw ConfigError("unknown scenario '" + name + "' (known: " + known + ")");
}

inline std::vector<KeySpec> schema_for(const Scenario& s) {
  std::vector<KeySpec> out = common_keys();
  out.insert(out.end(), s.keys.begin(), s.keys.end());
  return out;
}

}  // namespace lindblad::cli
