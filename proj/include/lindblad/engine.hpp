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
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "lindblad/floquet.hpp"

namespace lindblad {

/// Thermal occupation n = 1 / (1 + e^{Omega/T}).
inline double thermal_occupation(double omega, double temperature) {
  if (!(temperature > 0.0)) throw InvalidArgument("thermal_occupation: temperature must be > 0");
  return 1.0 / (1.0 + std::exp(omega / temperature));
}

struct BathRates {
  double gamma_plus = 0.0;
  double gamma_minus = 0.0;
};

/// Gamma_+ = gamma n, Gamma_- = gamma (1 - n); Gamma_-/Gamma_+ = e^{Omega/T}. Detached (no T) gives zero.
inline BathRates thermal_rates(double omega, std::optional<double> temperature, double coupling) {
  if (!temperature || coupling == 0.0) return {};
  if (!(*temperature > 0.0)) throw InvalidArgument("thermal_rates: nonpositive temperature on an attached stroke");
  const double n = thermal_occupation(omega, *temperature);
  return {coupling * n, coupling * (1.0 - n)};
}

/**
 * Four equal strokes per period. Omega is linear between the five nodes
 * (the last equals the first); the bath temperature is linear between the
 * given endpoints on attached strokes and absent on detached ones.
 */
struct EngineProtocol {
  std::string name;
  double period = 1.0;
  std::array<double, 5> omega_nodes{};
  std::array<std::optional<std::pair<double, double>>, 4> temperatures{};
  std::array<double, 4> coupling{};
  double t_hot = 0.0;   // hottest bath temperature (for the efficiency bound)
  double t_cold = 0.0;  // coldest bath temperature
  int hot_stroke = 0;
  int cold_stroke = 2;

  /// Stroke index floor(4 phase / T) in 0..3.
  int stroke(double t) const {
    double ph = std::fmod(t, period);
    if (ph < 0) ph += period;
    return std::min(3, static_cast<int>(std::floor(4.0 * ph / period)));
  }
  double local_fraction(double t, int s) const {
    double ph = std::fmod(t, period);
    if (ph < 0) ph += period;
    if (s == 0 && ph > 0.75 * period) ph -= period;  // t sits at the end of stroke 3 / start of stroke 0
    return std::clamp(4.0 * ph / period - s, 0.0, 1.0);
  }

  double omega_at(int s, double u) const {
    return omega_nodes[static_cast<std::size_t>(s)] +
           (omega_nodes[static_cast<std::size_t>(s) + 1] - omega_nodes[static_cast<std::size_t>(s)]) * u;
  }
  double omega_dot_at(int s) const {
    return (omega_nodes[static_cast<std::size_t>(s) + 1] - omega_nodes[static_cast<std::size_t>(s)]) /
           (0.25 * period);
  }
  std::optional<double> temperature_at(int s, double u) const {
    const auto& tt = temperatures[static_cast<std::size_t>(s)];
    if (!tt) return std::nullopt;
    return tt->first + (tt->second - tt->first) * u;
  }
  BathRates rates_at(int s, double u) const {
    return thermal_rates(omega_at(s, u), temperature_at(s, u), coupling[static_cast<std::size_t>(s)]);
  }

  double omega(double t) const { const int s = stroke(t); return omega_at(s, local_fraction(t, s)); }
  double omega_dot(double t) const { return omega_dot_at(stroke(t)); }
  BathRates rates(double t) const { const int s = stroke(t); return rates_at(s, local_fraction(t, s)); }

  std::vector<double> breakpoints() const { return {0.0, 0.25 * period, 0.5 * period, 0.75 * period, period}; }

  /// Time of the point at local fraction u of stroke s in cycle c.
  double time_at(int cycle, int s, double u) const { return period * (cycle + 0.25 * (s + u)); }
};

inline void check_protocol(const EngineProtocol& p) {
  if (!(p.period > 0.0)) throw InvalidArgument(p.name + ": period must be > 0");
  for (double o : p.omega_nodes)
    if (!(o > 0.0)) throw InvalidArgument(p.name + ": level splitting must stay > 0");
  if (std::abs(p.omega_nodes[4] - p.omega_nodes[0]) > 1e-14 * std::abs(p.omega_nodes[0]))
    throw InvalidArgument(p.name + ": Omega schedule must be periodic");
  for (std::size_t s = 0; s < 4; ++s) {
    if (p.coupling[s] < 0.0) throw InvalidArgument(p.name + ": coupling must be >= 0");
    if (p.coupling[s] != 0.0 && !p.temperatures[s]) throw InvalidArgument(p.name + ": attached stroke needs a temperature");
    if (p.temperatures[s] && (!(p.temperatures[s]->first > 0.0) || !(p.temperatures[s]->second > 0.0)))
      throw InvalidArgument(p.name + ": nonpositive temperature on an attached stroke");
  }
}

/// Carnot cycle: isotherm T_hot (a->b), isentrope (b->c), isotherm T_cold (c->d), isentrope (d->a).
inline EngineProtocol carnot_protocol(double omega_a, double omega_b, double t_hot, double t_cold, double period) {
  if (!(t_hot > t_cold && t_cold > 0.0)) throw InvalidArgument("carnot_protocol: need T_hot > T_cold > 0");
  if (!(omega_a > omega_b && omega_b > 0.0)) throw InvalidArgument("carnot_protocol: need Omega_a > Omega_b > 0");
  const double ratio = t_cold / t_hot;
  EngineProtocol p;
  p.name = "carnot";
  p.period = period;
  p.omega_nodes = {omega_a, omega_b, ratio * omega_b, ratio * omega_a, omega_a};
  p.temperatures = {std::make_pair(t_hot, t_hot), std::nullopt, std::make_pair(t_cold, t_cold), std::nullopt};
  p.coupling = {1.0, 0.0, 1.0, 0.0};
  p.t_hot = t_hot;
  p.t_cold = t_cold;
  check_protocol(p);
  return p;
}

/// Otto cycle: isochore at Omega_1 (T_a->T_b), ramp to Omega_2, isochore (T_c->T_d), ramp back.
inline EngineProtocol otto_protocol(double omega1, double omega2, double t_a, double t_b, double period) {
  if (!(omega1 > omega2 && omega2 > 0.0)) throw InvalidArgument("otto_protocol: need Omega_1 > Omega_2 > 0");
  if (!(t_b > t_a && t_a > 0.0)) throw InvalidArgument("otto_protocol: need T_b > T_a > 0");
  const double ratio = omega2 / omega1;
  EngineProtocol p;
  p.name = "otto";
  p.period = period;
  p.omega_nodes = {omega1, omega1, omega2, omega2, omega1};
  p.temperatures = {std::make_pair(t_a, t_b), std::nullopt, std::make_pair(ratio * t_b, ratio * t_a), std::nullopt};
  p.coupling = {1.0, 0.0, 1.0, 0.0};
  p.t_hot = t_b;
  p.t_cold = ratio * t_a;
  check_protocol(p);
  return p;
}

/// Qubit driving with the detailed-balance rates of the protocol.
inline QubitDriving detailed_balance_rates(const EngineProtocol& p) {
  check_protocol(p);
  QubitDriving d;
  d.omega = [p](double t) { return p.omega(t); };
  d.gamma_plus = [p](double t) { return p.rates(t).gamma_plus; };
  d.gamma_minus = [p](double t) { return p.rates(t).gamma_minus; };
  d.period = p.period;
  d.breakpoints = p.breakpoints();
  return d;
}

// ---------------------------------------------------------------------------
// Cycle observables.
// ---------------------------------------------------------------------------

enum class CycleMethod { floquet, direct };

inline const char* to_string(CycleMethod m) { return m == CycleMethod::floquet ? "floquet" : "direct"; }

/**
 * One limit cycle sampled stroke by stroke: `samples_per_stroke + 1` points per
 * stroke including both ends, so stroke boundaries appear twice with one-sided
 * derivatives. E = tr(rho H), P = tr(rho dH/dt), dQ = tr(rho D*_t(H)).
 */
struct CycleRecord {
  CycleMethod method = CycleMethod::direct;
  double period = 0.0;
  int samples_per_stroke = 0;
  std::vector<double> phase;  // t in [0, T]
  std::vector<int> stroke;
  std::vector<double> omega, omega_dot, sigma3, energy, power, heat_flow;
  std::vector<double> heat_flow_printed;  // floquet path only: 2 Omega Gamma_+^F Gamma_-^F / Gamma
  std::vector<double> gamma_plus_F, gamma_minus_F;  // floquet path only

  double work = 0.0;                 // oint P dt
  std::array<double, 4> stroke_heat{};  // int dQ dt per stroke
  double heat_hot = 0.0;
  double heat_cold = 0.0;
  double efficiency = 0.0;   // -oint P / oint max(dQ, 0)
  double work_ratio = 0.0;   // |oint P| / |int_hot dQ|
  double area = 0.0;         // signed shoelace area of (1/Omega, E)
  double closure_gap = 0.0;  // |E(T) - E(0)| / max |E|
  double first_law_residual = 0.0;             // pointwise, relative to the cycle scale
  double first_law_integrated_residual = 0.0;  // |oint (P + dQ) dt| / oint (|P| + |dQ|) dt
  double tau = 0.0;                            // 1 / Gamma_bar
  double max_detached_heat = 0.0;              // max |dQ| on detached strokes
  double period_mismatch = 0.0;                // direct path: consecutive-period difference
  int burn_in_periods = 0;
};

namespace detail {

// Composite Simpson on an even number of equal intervals.
inline double simpson(const std::vector<double>& y, std::size_t first, std::size_t count, double h) {
  const std::size_t n = count - 1;
  if (n % 2 != 0) throw InvalidArgument("simpson: need an even interval count");
  double acc = y[first] + y[first + n];
  for (std::size_t i = 1; i < n; ++i) acc += (i % 2 ? 4.0 : 2.0) * y[first + i];
  return acc * h / 3.0;
}

inline double shoelace(const std::vector<double>& x, const std::vector<double>& y) {
  double a = 0.0;
  const std::size_t n = x.size();
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t j = (i + 1) % n;
    a += x[i] * y[j] - x[j] * y[i];
  }
  return 0.5 * a;
}

// Unique orbit points in phase order (drops the duplicated end of each stroke).
inline void orbit_points(const CycleRecord& r, std::vector<double>& x, std::vector<double>& y) {
  x.clear();
  y.clear();
  const auto per = static_cast<std::size_t>(r.samples_per_stroke + 1);
  for (std::size_t s = 0; s < 4; ++s)
    for (std::size_t j = 0; j + 1 < per; ++j) {
      x.push_back(1.0 / r.omega[s * per + j]);
      y.push_back(r.energy[s * per + j]);
    }
}

inline void finalize_cycle(CycleRecord& r, const EngineProtocol& p) {
  const auto per = static_cast<std::size_t>(r.samples_per_stroke + 1);
  const double h = 0.25 * p.period / r.samples_per_stroke;
  double heat_pos = 0.0, abs_sum = 0.0, closure = 0.0;
  r.work = 0.0;
  std::vector<double> pos(r.heat_flow.size()), absv(r.heat_flow.size()), sum(r.heat_flow.size());
  for (std::size_t i = 0; i < r.heat_flow.size(); ++i) {
    pos[i] = std::max(r.heat_flow[i], 0.0);
    absv[i] = std::abs(r.power[i]) + std::abs(r.heat_flow[i]);
    sum[i] = r.power[i] + r.heat_flow[i];
  }
  for (std::size_t s = 0; s < 4; ++s) {
    r.work += simpson(r.power, s * per, per, h);
    r.stroke_heat[s] = simpson(r.heat_flow, s * per, per, h);
    heat_pos += simpson(pos, s * per, per, h);
    abs_sum += simpson(absv, s * per, per, h);
    closure += simpson(sum, s * per, per, h);
  }
  r.heat_hot = r.stroke_heat[static_cast<std::size_t>(p.hot_stroke)];
  r.heat_cold = r.stroke_heat[static_cast<std::size_t>(p.cold_stroke)];
  r.efficiency = heat_pos > 0.0 ? -r.work / heat_pos : 0.0;
  r.work_ratio = r.heat_hot != 0.0 ? std::abs(r.work) / std::abs(r.heat_hot) : 0.0;
  r.first_law_integrated_residual = abs_sum > 0.0 ? std::abs(closure) / abs_sum : 0.0;

  std::vector<double> x, y;
  orbit_points(r, x, y);
  r.area = shoelace(x, y);
  double emax = 0.0;
  for (double e : r.energy) emax = std::max(emax, std::abs(e));
  r.closure_gap = emax > 0.0 ? std::abs(r.energy.back() - r.energy.front()) / emax : 0.0;
  r.max_detached_heat = 0.0;
  for (std::size_t i = 0; i < r.heat_flow.size(); ++i)
    if (p.coupling[static_cast<std::size_t>(r.stroke[i])] == 0.0)
      r.max_detached_heat = std::max(r.max_detached_heat, std::abs(r.heat_flow[i]));
}

inline void append_point(CycleRecord& r, const EngineProtocol& p, int s, double u, const CMatrix& rho) {
  const auto& basis = qubit_operators().space->basis();
  const double om = p.omega_at(s, u);
  const double omd = p.omega_dot_at(s);
  const BathRates br = p.rates_at(s, u);
  const CMatrix h = -0.5 * om * pauli::z();
  const double s3 = (rho * pauli::z()).trace().real();
  r.phase.push_back(0.25 * p.period * (s + u));
  r.stroke.push_back(s);
  r.omega.push_back(om);
  r.omega_dot.push_back(omd);
  r.sigma3.push_back(s3);
  r.energy.push_back((rho * h).trace().real());
  r.power.push_back(-0.5 * omd * s3);
  const CMatrix g = qubit_dissipation_matrix(br.gamma_plus, br.gamma_minus);
  r.heat_flow.push_back((rho * dual_dissipator(basis, g, h)).trace().real());
}

}  // namespace detail

struct CycleOptions {
  int samples_per_stroke = 1000;  // even, for Simpson
  IntegratorConfig integrator = {};
  double period_tolerance = 1e-4;
};

/// Limit cycle from the Floquet steady state at every phase (kernel of L_F(t)).
inline CycleRecord cycle_observables_floquet(const EngineProtocol& p, const CycleOptions& opt = {}) {
  const QubitDriving d = detailed_balance_rates(p);
  const int ms = opt.samples_per_stroke;
  if (ms < 2 || ms % 2) throw InvalidArgument("cycle_observables: samples_per_stroke must be even and >= 2");
  std::vector<double> phases;
  for (int s = 0; s < 4; ++s)
    for (int j = 0; j <= ms; ++j) phases.push_back(p.time_at(0, s, static_cast<double>(j) / ms));
  const FloquetParams fp = floquet_params(d, phases, tight_config());

  CycleRecord r;
  r.method = CycleMethod::floquet;
  r.period = p.period;
  r.samples_per_stroke = ms;
  std::size_t idx = 0;
  for (int s = 0; s < 4; ++s)
    for (int j = 0; j <= ms; ++j, ++idx) {
      const double u = static_cast<double>(j) / ms;
      const CMatrix rho = kernel_state(fp.generator(idx));
      detail::append_point(r, p, s, u, rho);
      const double gpf = fp.gamma_plus_F[idx], gmf = fp.gamma_minus_F[idx];
      r.gamma_plus_F.push_back(gpf);
      r.gamma_minus_F.push_back(gmf);
      r.heat_flow_printed.push_back(2.0 * p.omega_at(s, u) * gpf * gmf / fp.gamma_total());
    }
  r.tau = 1.0 / fp.gamma_total();
  detail::finalize_cycle(r, p);
  // The derivative of E along the cycle is not sampled on this path; the first law is checked on the direct path.
  r.first_law_residual = 0.0;
  return r;
}

/**
 * Limit cycle by direct propagation from I/2: burn-in of ceil((10/Gamma_bar)/T) + 2
 * periods, then two consecutive periods are compared (mismatch above the
 * tolerance throws TransientNotElapsed) and the last one is recorded.
 */
inline CycleRecord cycle_observables_direct(const EngineProtocol& p, const CycleOptions& opt = {}) {
  const QubitDriving d = detailed_balance_rates(p);
  const LiouvillianSpec spec = to_spec(d);
  const int ms = opt.samples_per_stroke;
  if (ms < 2 || ms % 2) throw InvalidArgument("cycle_observables: samples_per_stroke must be even and >= 2");
  const FrameTargets avg = period_averages(d);
  const double gbar = avg.gamma_plus + avg.gamma_minus;
  if (!(gbar > 0.0)) throw NoUniqueFixedPoint("cycle_observables: protocol has no net coupling to the baths");
  const int burn = static_cast<int>(std::ceil((10.0 / gbar) / p.period)) + 2;

  std::vector<double> times;
  for (int c : {burn, burn + 1})
    for (int s = 0; s < 4; ++s)
      for (int j = 0; j <= ms; ++j) times.push_back(p.time_at(c, s, static_cast<double>(j) / ms));
  const Trajectory tr = evolve(spec, CMatrix::Identity(2, 2) / 2.0, [&] {
    std::vector<double> g = {0.0};
    g.insert(g.end(), times.begin(), times.end());
    return g;
  }(), opt.integrator);

  const std::size_t per_cycle = static_cast<std::size_t>(4 * (ms + 1));
  CycleRecord r;
  r.method = CycleMethod::direct;
  r.period = p.period;
  r.samples_per_stroke = ms;
  r.burn_in_periods = burn;
  r.tau = 1.0 / gbar;
  double mismatch = 0.0;
  for (std::size_t i = 0; i < per_cycle; ++i) {
    const CMatrix a = tr.rho(1 + i), b = tr.rho(1 + per_cycle + i);
    mismatch = std::max(mismatch, (a - b).cwiseAbs().maxCoeff());
  }
  r.period_mismatch = mismatch;
  if (mismatch > opt.period_tolerance) {
    std::ostringstream os;
    os << "cycle_observables: limit cycle not reached (consecutive periods differ by " << mismatch
       << "); increase the burn-in";
    throw TransientNotElapsed(os.str());
  }

  // Pointwise first law: dE/dt from the generator, tr(H L_t[rho]) + tr(rho dH/dt).
  double scale = 0.0;
  std::vector<double> de_dt;
  std::size_t idx = 1 + per_cycle;
  for (int s = 0; s < 4; ++s)
    for (int j = 0; j <= ms; ++j, ++idx) {
      const double u = static_cast<double>(j) / ms;
      const CMatrix rho = tr.rho(idx);
      detail::append_point(r, p, s, u, rho);
      const BathRates br = p.rates_at(s, u);
      const Superoperator l = qubit_liouvillian(p.omega_at(s, u), br.gamma_plus, br.gamma_minus, 0.0);
      const CMatrix rho_dot = devectorize(l * tr.states[idx]);
      const CMatrix h = -0.5 * p.omega_at(s, u) * pauli::z();
      de_dt.push_back((rho_dot * h).trace().real() + r.power.back());
      scale = std::max(scale, std::abs(r.power.back()) + std::abs(r.heat_flow.back()));
    }
  for (std::size_t i = 0; i < de_dt.size(); ++i)
    r.first_law_residual =
        std::max(r.first_law_residual, std::abs(de_dt[i] - (r.power[i] + r.heat_flow[i])) / std::max(scale, 1e-300));
  detail::finalize_cycle(r, p);
  return r;
}

inline CycleRecord cycle_observables(const EngineProtocol& p, CycleMethod m, const CycleOptions& opt = {}) {
  return m == CycleMethod::floquet ? cycle_observables_floquet(p, opt) : cycle_observables_direct(p, opt);
}

// ---------------------------------------------------------------------------
// Quasi-static reference and area deviation.
// ---------------------------------------------------------------------------

/// Equilibrium energy (Omega/2) tanh(Omega / 2T) of the qubit.
inline double equilibrium_energy(double omega, double temperature) {
  return 0.5 * omega * std::tanh(0.5 * omega / temperature);
}

/**
 * Reversible limit of the protocol: equilibrium energy on attached strokes,
 * E proportional to Omega on detached ones. Throws OrbitNotClosed when stroke
 * ends do not meet (reversibility conditions violated).
 */
inline CycleRecord quasi_static_reference(const EngineProtocol& p, int samples_per_stroke = 1000,
                                          double closure_tol = 1e-10) {
  check_protocol(p);
  CycleRecord r;
  r.method = CycleMethod::floquet;
  r.period = p.period;
  r.samples_per_stroke = samples_per_stroke;
  const int ms = samples_per_stroke;
  double e_prev_end = 0.0;
  bool have_prev = false;
  double e_start = 0.0;
  for (int s = 0; s < 4; ++s) {
    const double om0 = p.omega_at(s, 0.0);
    double e0;
    if (p.temperatures[static_cast<std::size_t>(s)]) {
      e0 = equilibrium_energy(om0, *p.temperature_at(s, 0.0));
    } else {
      if (!have_prev) throw OrbitNotClosed("quasi_static_reference: cycle must start on an attached stroke");
      e0 = e_prev_end;
    }
    if (have_prev && std::abs(e0 - e_prev_end) > closure_tol * std::max(1.0, std::abs(e0))) {
      std::ostringstream os;
      os << "quasi_static_reference: orbit does not close at the start of stroke " << s << " (mismatch "
         << e0 - e_prev_end << ")";
      throw OrbitNotClosed(os.str());
    }
    if (s == 0) e_start = e0;
    for (int j = 0; j <= ms; ++j) {
      const double u = static_cast<double>(j) / ms;
      const double om = p.omega_at(s, u);
      double e;
      if (p.temperatures[static_cast<std::size_t>(s)]) e = equilibrium_energy(om, *p.temperature_at(s, u));
      else e = e0 * om / om0;
      r.phase.push_back(0.25 * p.period * (s + u));
      r.stroke.push_back(s);
      r.omega.push_back(om);
      r.omega_dot.push_back(p.omega_dot_at(s));
      r.energy.push_back(e);
      r.sigma3.push_back(-2.0 * e / om);
      r.power.push_back(r.omega_dot.back() * e / om);
      r.heat_flow.push_back(0.0);
    }
    e_prev_end = r.energy.back();
    have_prev = true;
  }
  if (std::abs(e_prev_end - e_start) > closure_tol * std::max(1.0, std::abs(e_start))) {
    std::ostringstream os;
    os << "quasi_static_reference: orbit does not close (mismatch " << e_prev_end - e_start << ")";
    throw OrbitNotClosed(os.str());
  }
  std::vector<double> x, y;
  detail::orbit_points(r, x, y);
  r.area = detail::shoelace(x, y);
  r.closure_gap = std::abs(e_prev_end - e_start);
  return r;
}

struct AreaDeviation {
  std::vector<double> periods;
  std::vector<double> delta;  // 1 - A / A_QS
  double area_qs = 0.0;
  double c = 0.0;         // least-squares delta = c / T on the largest-T half
  double exponent = 0.0;  // log-log slope over all points
  bool monotone = true;
};

inline AreaDeviation area_deviation(const std::vector<CycleRecord>& records, double area_qs,
                                    double gap_tol = 1e-3) {
  if (records.size() < 4) throw InvalidArgument("area_deviation: need at least 4 periods");
  AreaDeviation out;
  out.area_qs = area_qs;
  std::vector<std::size_t> order(records.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](auto a, auto b) { return records[a].period < records[b].period; });
  for (auto i : order) {
    const CycleRecord& r = records[i];
    if (r.closure_gap > gap_tol) {
      std::ostringstream os;
      os << "area_deviation: orbit at T = " << r.period << " is not closed (gap " << r.closure_gap << ")";
      throw OrbitNotClosed(os.str());
    }
    out.periods.push_back(r.period);
    out.delta.push_back(1.0 - r.area / area_qs);
  }
  const std::size_t n = out.periods.size();
  const std::size_t half = (n + 1) / 2;
  double num = 0.0, den = 0.0;
  for (std::size_t i = n - half; i < n; ++i) {
    num += out.delta[i] / out.periods[i];
    den += 1.0 / (out.periods[i] * out.periods[i]);
  }
  out.c = num / den;
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  bool logs_ok = true;
  for (std::size_t i = 0; i < n; ++i) {
    if (!(out.delta[i] > 0.0)) logs_ok = false;
    if (i > 0 && !(out.delta[i] < out.delta[i - 1])) out.monotone = false;
  }
  if (logs_ok) {
    for (std::size_t i = 0; i < n; ++i) {
      const double x = std::log(out.periods[i]), y = std::log(out.delta[i]);
      sx += x; sy += y; sxx += x * x; sxy += x * y;
    }
    out.exponent = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  } else {
    out.exponent = std::numeric_limits<double>::quiet_NaN();
  }
  return out;
}

/// Cycle records for each period, computed on up to `parallel` threads; output order follows `periods`.
template <class ProtocolFactory>
std::vector<CycleRecord> engine_sweep(const ProtocolFactory& make, const std::vector<double>& periods, CycleMethod m,
                                      const CycleOptions& opt = {}, int parallel = 1) {
  std::vector<CycleRecord> out(periods.size());
  std::vector<std::exception_ptr> errors(periods.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < periods.size(); i = next++) {
      try {
        out[i] = cycle_observables(make(periods[i]), m, opt);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const int threads = std::max(1, std::min<int>(parallel, static_cast<int>(periods.size())));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int i = 0; i < threads; ++i) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  return out;
}

}  // namespace lindblad
