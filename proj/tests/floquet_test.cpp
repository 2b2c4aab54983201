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

#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "lindblad/floquet.hpp"

namespace lindblad {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double max_abs(const CMatrix& m) { return m.cwiseAbs().maxCoeff(); }

TEST(FloquetGenerator, ClosedFormSpectrum) {
  // H_3 coefficient sqrt2 means Omega = 2 in physical units.
  const FloquetData d = floquet_data(qubit_liouvillian(2.0, 2.0, 3.0));
  const std::array<Complex, 4> expected = {Complex(0, 0), Complex(-2.5, 2), Complex(-2.5, -2), Complex(-5, 0)};
  for (int i = 0; i < 4; ++i) EXPECT_LT(std::abs(d.spectrum(i) - expected[static_cast<std::size_t>(i)]), 1e-8);
  const auto cf = closed_form_spectrum(5.0, 2.0);
  EXPECT_EQ(cf[1], Complex(-5.0, 0.0));
  EXPECT_EQ(cf[2], Complex(-2.5, 2.0));
}

TEST(FloquetGenerator, UnbiasedPumpingGivesMixedState) {
  const FloquetData d = floquet_data(qubit_liouvillian(0.8, 1.5, 1.5));
  EXPECT_LT(max_abs(d.steady_state - CMatrix::Identity(2, 2) / 2.0), 1e-12);
  EXPECT_LT(d.kernel_residual, 1e-12);
}

TEST(FloquetGenerator, CounterOscillatingStroboscopicFixedPoint) {
  const FloquetParams fp = floquet_params(counter_oscillating(), {0.0});
  const FloquetData d = floquet_generator(fp, 0);
  EXPECT_TRUE(d.physical);
  const double s3 = (d.steady_state * pauli::z()).trace().real();
  EXPECT_NEAR(s3, (-1.0 - 2.0 * 0.096154) / 5.0, 1e-6);
  EXPECT_NEAR(s3, -0.238462, 1e-6);

  // Cross-check against a long propagation sampled at a multiple of the period.
  const Trajectory tr = evolve(to_spec(counter_oscillating()), CMatrix::Identity(2, 2) / 2.0,
                               {0.0, 8 * kTwoPi}, tight_config());
  EXPECT_NEAR(tr.observable(pauli::z()).back(), s3, 1e-8);
}

TEST(FloquetGenerator, SpectrumIndependentOfPhase) {
  std::vector<double> phases;
  for (int i = 0; i < 12; ++i) phases.push_back(kTwoPi * i / 12.0);
  const FloquetParams fp = floquet_params(counter_oscillating(), phases);
  const CVector ref = floquet_generator(fp, 0).spectrum;
  for (std::size_t i = 1; i < phases.size(); ++i)
    EXPECT_LT((floquet_generator(fp, i).spectrum - ref).cwiseAbs().maxCoeff(), 1e-7);
}

TEST(Stroboscopic, SemigroupAndIdentity) {
  const Superoperator l = qubit_liouvillian(1.0, 0.4, 0.6, 0.1);
  EXPECT_LT(max_abs(stroboscopic_map(l, 0, 1.3) - Superoperator::Identity(4, 4)), 1e-15);
  const Superoperator m1 = stroboscopic_map(l, 1, 1.3);
  EXPECT_LT(max_abs(stroboscopic_map(l, 2, 1.3) - m1 * m1), 1e-10);
  EXPECT_THROW(stroboscopic_map(l, -1, 1.0), InvalidArgument);
}

TEST(Stroboscopic, MatchesPropagatedPeriods) {
  const QubitDriving d = counter_oscillating();
  const FloquetParams fp = floquet_params(d, {0.0});
  const Superoperator lf = fp.generator(0);
  std::vector<double> times;
  for (int m = 1; m <= 5; ++m) times.push_back(m * kTwoPi);
  const auto maps = dynamical_maps(to_spec(d), 0.0, times, tight_config());
  for (int m = 1; m <= 5; ++m)
    EXPECT_LT(max_abs(stroboscopic_map(lf, m, kTwoPi) - maps[static_cast<std::size_t>(m - 1)]), 1e-6) << "m=" << m;
  const CptpReport r = cptp_diagnostics(stroboscopic_map(lf, 1, kTwoPi));
  EXPECT_TRUE(r.passes());
}

TEST(Micromotion, IdentityAndPeriodicity) {
  const QubitDriving d = counter_oscillating();
  const RotatingFrameSolution s = periodic_fixed_point(d, {0.0, kTwoPi});
  EXPECT_LT(max_abs(micromotion(frame_map(s, 0), frame_map(s, 0)) - Superoperator::Identity(4, 4)), 1e-12);
  EXPECT_LT(max_abs(micromotion(frame_map(s, 1), frame_map(s, 0)) - Superoperator::Identity(4, 4)), 1e-8);
}

TEST(Micromotion, MidPeriodComposition) {
  const QubitDriving d = counter_oscillating();
  const double t = 0.5 * kTwoPi;
  const RotatingFrameSolution s = periodic_fixed_point(d, {0.0, t});
  const FloquetParams fp = floquet_params(d, {0.0});
  // Lambda = K_{t,0} e^{L_F(0) t} with K_{t,0} = W_t^{-1} W_0.
  const Superoperator full = micromotion(frame_map(s, 1), frame_map(s, 0)) * matrix_exp(fp.generator(0), t);
  EXPECT_LT(max_abs(full - dynamical_map(to_spec(d), 0.0, t, tight_config())), 1e-6);
}

TEST(Micromotion, SingularFrameRejected) {
  EXPECT_THROW(micromotion(Superoperator::Zero(4, 4), Superoperator::Identity(4, 4)), NumericalError);
}

LiouvillianSpec sine_spec(double amp, double w, const CMatrix& g0, const CMatrix& g1) {
  LiouvillianSpec s;
  s.space = make_liouville_space(2);
  s.hamiltonian = [](double) { return RVector::Zero(3).eval(); };
  s.dissipation = [=](double t) { return (g0 + amp * std::sin(w * t) * g1).eval(); };
  s.period = kTwoPi / w;
  return s;
}

TEST(FourierModes, TimeIndependentSpec) {
  const CMatrix g = qubit_dissipation_matrix(0.3, 0.5);
  const FourierModes fm = fourier_modes(sine_spec(0.0, 1.0, g, g), 4, 1024);
  for (int k = -4; k <= 4; ++k)
    if (k != 0) EXPECT_LT(max_abs(fm.V(k)), 1e-10);
  EXPECT_LT(fm.reconstruction_residual, 1e-10);
}

TEST(FourierModes, SineCoefficients) {
  const CMatrix g0 = qubit_dissipation_matrix(2.0, 3.0);
  const CMatrix g1 = qubit_dissipation_matrix(1.0, -1.0);  // polariser counter-oscillation
  const double amp = 0.5;
  const FourierModes fm = fourier_modes(sine_spec(amp, 2.0, g0, g1), 6, 1024);
  const auto& q = qubit_operators();
  const Superoperator m = q.D_up - q.D_down;
  EXPECT_LT(max_abs(fm.V(1) - (-kI * amp / 2.0) * m), 1e-12);
  EXPECT_LT(max_abs(fm.V(-1) - (kI * amp / 2.0) * m), 1e-12);
  for (int k = 2; k <= 6; ++k) {
    EXPECT_LT(max_abs(fm.V(k)), 1e-12);
    EXPECT_LT(max_abs(fm.V(-k)), 1e-12);
  }
  EXPECT_LT(max_abs(fm.Lbar - (2.0 * q.D_up + 3.0 * q.D_down)), 1e-12);
  EXPECT_LT(fm.reconstruction_residual, 1e-8);
  EXPECT_LT(fm.quadrature_delta, 1e-12);
}

TEST(FourierModes, RequiresPeriod) {
  LiouvillianSpec s = sine_spec(0.1, 1.0, CMatrix::Zero(3, 3), CMatrix::Zero(3, 3));
  s.period.reset();
  EXPECT_THROW(fourier_modes(s), InvalidArgument);
  s.period = 1.0;
  EXPECT_THROW(fourier_modes(s, 0), InvalidArgument);
}

TEST(Magnus, ZeroModesAreTrivial) {
  const CMatrix g = qubit_dissipation_matrix(0.3, 0.5, 0.1);
  const FourierModes fm = fourier_modes(sine_spec(0.0, 3.0, g, g), 3, 256);
  for (int order : {0, 1, 2}) {
    const MagnusResult r = magnus_second_order(fm, 0.7, 0.2, order);
    EXPECT_LT(max_abs(r.Ltilde - fm.Lbar), 1e-10);
    EXPECT_LT(max_abs(r.LF - fm.Lbar), 1e-10);
    EXPECT_LT(max_abs(r.K), 1e-10);
  }
  EXPECT_THROW(magnus_second_order(fm, 0.0, 0.0, 3), InvalidArgument);
}

TEST(Magnus, FirstOrderShift) {
  const double w = 10.0;
  const QubitDriving d = counter_oscillating(2.0, 3.0, 0.5, w);
  const FourierModes fm = fourier_modes(to_spec(d), 4, 1024);
  const QubitParams p = project_qubit_params(magnus_second_order(fm, 0.0, 0.0, 1).LF);
  EXPECT_LT(p.residual, 1e-10);
  // Gamma_+^F = Gamma_+_bar - A Gamma / w
  EXPECT_NEAR(2.0 - p.gamma_plus, 0.25, 1e-9);
  EXPECT_NEAR(p.gamma_minus - 3.0, 0.25, 1e-9);
  EXPECT_NEAR(counter_oscillating_delta_gamma(0.0, 0.5, w, 5.0), 0.5 * 10 * 5 / 125.0, 1e-12);
}

TEST(Magnus, SecondOrderErrorScaling) {
  std::vector<double> errs;
  const std::vector<double> ws = {10.0, 20.0, 40.0};
  for (double w : ws) {
    const QubitDriving d = counter_oscillating(2.0, 3.0, 0.5, w);
    const FourierModes fm = fourier_modes(to_spec(d), 4, 1024);
    const double dg = counter_oscillating_delta_gamma(0.0, 0.5, w, 5.0);
    const Superoperator exact = qubit_liouvillian(std::sqrt(2.0), 2.0 - dg, 3.0 + dg);
    const MagnusResult r = magnus_second_order(fm, 0.0, 0.0, 2);
    errs.push_back((r.LF - exact).norm());
  }
  const double slope = -std::log(errs[2] / errs[0]) / std::log(ws[2] / ws[0]);
  EXPECT_NEAR(slope, 3.0, 0.5);
}

TEST(Magnus, MicromotionStructure) {
  // First order: K_{t,0} = (A/w)(1 - cos wt)(D_up - D_down) - (Delta/(sqrt2 w)) sin(wt) H_3.
  const double w = 10.0, amp = 0.5, delta = -std::sqrt(2.0);
  const QubitDriving d = counter_oscillating(2.0, 3.0, amp, w);
  const FourierModes fm = fourier_modes(to_spec(d), 3, 512);
  const auto& q = qubit_operators();
  const double t = 0.13;
  const Superoperator k1 = magnus_second_order(fm, t, 0.0, 1).K;
  const Superoperator expected = (amp / w) * (1.0 - std::cos(w * t)) * (q.D_up - q.D_down) -
                                 (delta / (std::sqrt(2.0) * w)) * std::sin(w * t) * q.H3;
  EXPECT_LT(max_abs(k1 - expected), 1e-10);
}

TEST(Magnus, MicromotionApproachesExact) {
  // exp(K) against the exact K_{t,0} = Lambda_{t,0} exp(-L_F(0) t): each order improves, and the
  // error shrinks with w.
  const double t = 0.37;
  double prev = 1.0;
  for (double w : {10.0, 20.0, 40.0}) {
    const QubitDriving d = counter_oscillating(2.0, 3.0, 0.5, w);
    const FourierModes fm = fourier_modes(to_spec(d), 4, 1024);
    const double dg = counter_oscillating_delta_gamma(0.0, 0.5, w, 5.0);
    const Superoperator lf = qubit_liouvillian(std::sqrt(2.0), 2.0 - dg, 3.0 + dg);
    const Superoperator k_exact = dynamical_map(to_spec(d), 0.0, t, tight_config()) * matrix_exp(lf, -t);
    double err[3];
    for (int order = 0; order <= 2; ++order)
      err[order] = max_abs(matrix_exp(magnus_second_order(fm, t, 0.0, order).K) - k_exact);
    EXPECT_LT(err[1], err[0]) << "w=" << w;
    EXPECT_LT(err[2], err[1]) << "w=" << w;
    EXPECT_LT(err[2], prev) << "w=" << w;
    prev = err[2];
  }
  EXPECT_LT(prev, 1e-3);
}

TEST(ProjectQubitParams, RoundTrip) {
  const QubitParams p = project_qubit_params(qubit_liouvillian(1.7, 0.2, 0.9, 0.3));
  EXPECT_NEAR(p.omega, 1.7, 1e-12);
  EXPECT_NEAR(p.gamma_plus, 0.2, 1e-12);
  EXPECT_NEAR(p.gamma_minus, 0.9, 1e-12);
  EXPECT_NEAR(p.gamma3, 0.3, 1e-12);
  EXPECT_LT(p.residual, 1e-12);
}

}  // namespace
}  // namespace lindblad
