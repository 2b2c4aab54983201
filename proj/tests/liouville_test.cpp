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

#include <algorithm>
#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "lindblad/liouville.hpp"

namespace lindblad {
namespace {

CMatrix random_complex(int r, int c, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  CMatrix a(r, c);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < c; ++j) a(i, j) = {g(rng), g(rng)};
  return a;
}

CMatrix random_density(int n, std::mt19937_64& rng) {
  const CMatrix a = random_complex(n, n, rng);
  CMatrix rho = a * a.adjoint();
  return rho / rho.trace();
}

CMatrix random_psd(int m, std::mt19937_64& rng) {
  const CMatrix a = random_complex(m, m, rng);
  return a * a.adjoint();
}

CVector sorted_eigs(const CMatrix& m) {
  Eigen::ComplexEigenSolver<CMatrix> es(m);
  CVector e = es.eigenvalues();
  std::sort(e.data(), e.data() + e.size(), [](Complex a, Complex b) {
    return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
  });
  return e;
}

TEST(Vectorize, BasisDyad) {
  CMatrix e12 = CMatrix::Zero(2, 2);
  e12(0, 1) = 1.0;
  const CVector v = vectorize(e12);
  CVector expected = CVector::Zero(4);
  expected(2) = 1.0;
  EXPECT_EQ(v, expected);
}

TEST(Vectorize, MaximallyMixed) {
  const CVector v = vectorize(CMatrix::Identity(2, 2) / 2.0);
  CVector expected(4);
  expected << 0.5, 0, 0, 0.5;
  EXPECT_EQ(v, expected);
}

TEST(Vectorize, RoundTripAndSandwichRule) {
  std::mt19937_64 rng(11);
  for (int n : {2, 3}) {
    const CMatrix rho = random_complex(n, n, rng);
    EXPECT_EQ(devectorize(vectorize(rho)), rho);
    const CMatrix a = random_complex(n, n, rng), b = random_complex(n, n, rng);
    EXPECT_LT((vectorize(a * rho * b) - kron(b.transpose(), a) * vectorize(rho)).cwiseAbs().maxCoeff(), 1e-12);
  }
  EXPECT_THROW(vectorize(CMatrix::Zero(2, 3)), InvalidDimension);
  EXPECT_THROW(devectorize(CVector::Zero(5)), InvalidDimension);
}

TEST(SuperopBasis, HamiltonianAction) {
  std::mt19937_64 rng(3);
  const OperatorBasis b = build_su_basis(2);
  const CMatrix rho = random_density(2, rng);
  const CMatrix out = devectorize(build_superop_H(b, 3) * vectorize(rho));
  const CMatrix expect = -kI * (b[3] * rho - rho * b[3]);
  EXPECT_LT((out - expect).cwiseAbs().maxCoeff(), 1e-14);
}

TEST(SuperopBasis, DissipatorActionQutrit) {
  std::mt19937_64 rng(5);
  const OperatorBasis b = build_su_basis(3);
  std::uniform_int_distribution<int> pick(1, 8);
  for (int trial = 0; trial < 10; ++trial) {
    const int k = pick(rng), l = pick(rng);
    const CMatrix rho = random_density(3, rng);
    const CMatrix lk = b[l] * b[k];
    const CMatrix expect = b[k] * rho * b[l] - 0.5 * (lk * rho + rho * lk);
    EXPECT_LT((devectorize(build_superop_D(b, k, l) * vectorize(rho)) - expect).cwiseAbs().maxCoeff(), 1e-12);
  }
}

TEST(SuperopBasis, TraceRowVanishes) {
  const LiouvilleSpace s(3);
  const auto tr = trace_row(3);
  for (int k = 1; k <= 8; ++k) {
    EXPECT_LT((tr * s.H(k)).cwiseAbs().maxCoeff(), 1e-14);
    for (int l = 1; l <= 8; ++l) EXPECT_LT((tr * s.D(k, l)).cwiseAbs().maxCoeff(), 1e-14);
  }
}

TEST(SuperopBasis, IndexChecks) {
  const OperatorBasis b = build_su_basis(2);
  EXPECT_THROW(build_superop_H(b, 0), IndexOutOfRange);
  EXPECT_THROW(build_superop_H(b, 4), IndexOutOfRange);
  EXPECT_THROW(build_superop_D(b, 1, 4), IndexOutOfRange);
}

LiouvillianSpec constant_spec(std::shared_ptr<const LiouvilleSpace> space, RVector h, CMatrix g) {
  LiouvillianSpec s;
  s.space = std::move(space);
  s.hamiltonian = [h](double) { return h; };
  s.dissipation = [g](double) { return g; };
  return s;
}

TEST(Assemble, PureRotationSpectrum) {
  RVector h = RVector::Zero(3);
  h(2) = -1.0 / std::sqrt(2.0);  // H = -sigma_3/2
  const auto l = assemble(constant_spec(make_liouville_space(2), h, CMatrix::Zero(3, 3)), 0.0);
  const CVector e = sorted_eigs(l);
  EXPECT_NEAR(std::abs(e(0) - Complex(0, -1)), 0.0, 1e-12);
  EXPECT_NEAR(std::abs(e(1)), 0.0, 1e-12);
  EXPECT_NEAR(std::abs(e(2)), 0.0, 1e-12);
  EXPECT_NEAR(std::abs(e(3) - Complex(0, 1)), 0.0, 1e-12);
}

TEST(Assemble, ZeroCoefficients) {
  const auto l = assemble(constant_spec(make_liouville_space(3), RVector::Zero(8), CMatrix::Zero(8, 8)), 1.0);
  EXPECT_EQ(l.cwiseAbs().maxCoeff(), 0.0);
}

TEST(Assemble, PolariserRelaxationRate) {
  const Superoperator l = qubit_liouvillian(0.0, 2.0, 3.0, 0.0);
  const CVector e = sorted_eigs(l);
  EXPECT_NEAR(e(0).real(), -5.0, 1e-12);
  EXPECT_NEAR(e(1).real(), -2.5, 1e-12);
  EXPECT_NEAR(std::abs(e(3)), 0.0, 1e-12);
}

TEST(Assemble, RejectsNonHermitianGamma) {
  CMatrix g = CMatrix::Zero(3, 3);
  g(0, 1) = 1.0;
  LiouvillianSpec s = constant_spec(make_liouville_space(2), RVector::Zero(3), g);
  try {
    assemble(s, 0.25);
    FAIL() << "expected InvalidSpec";
  } catch (const InvalidSpec& e) {
    EXPECT_DOUBLE_EQ(e.time(), 0.25);
  }
}

TEST(ValidateSpec, FlagsNegativeEigenvalue) {
  CMatrix g = CMatrix::Zero(3, 3);
  g(0, 0) = -1e-6;
  const LiouvillianSpec s = constant_spec(make_liouville_space(2), RVector::Zero(3), g);
  EXPECT_THROW(validate_spec(s, {0.0, 1.0}), InvalidSpec);
  g(0, 0) = -1e-12;  // roundoff slack
  EXPECT_NO_THROW(validate_spec(constant_spec(make_liouville_space(2), RVector::Zero(3), g), {0.0}));
}

TEST(JumpToCoefficients, RaisingOperator) {
  auto space = make_liouville_space(2);
  JumpSpec js;
  js.n = 2;
  js.jumps.push_back({pauli::plus(), [](double) { return 2.0; }});
  const LiouvillianSpec s = jump_to_coefficients(js, space);
  const CMatrix g = s.dissipation(0.0);
  EXPECT_NEAR(std::abs(g(0, 0) - 1.0), 0.0, 1e-14);
  EXPECT_NEAR(std::abs(g(1, 1) - 1.0), 0.0, 1e-14);
  EXPECT_NEAR(std::abs(g(0, 1) - Complex(0, -1)), 0.0, 1e-14);
  EXPECT_NEAR(std::abs(g(1, 0) - Complex(0, 1)), 0.0, 1e-14);
  EXPECT_NEAR(std::abs(g(2, 2)), 0.0, 1e-14);
}

TEST(JumpToCoefficients, DephasingAndHamiltonian) {
  auto space = make_liouville_space(2);
  JumpSpec js;
  js.n = 2;
  const double om = 1.7, g3 = 0.4;
  js.hamiltonian = [om](double) -> CMatrix { return -0.5 * om * pauli::z(); };
  js.jumps.push_back({pauli::z(), [g3](double) { return g3; }});
  const LiouvillianSpec s = jump_to_coefficients(js, space);
  EXPECT_NEAR(std::abs(s.dissipation(0)(2, 2) - 2.0 * g3), 0.0, 1e-14);
  const RVector h = s.hamiltonian(0);
  EXPECT_NEAR(h(2), -om / std::sqrt(2.0), 1e-14);
  EXPECT_NEAR(h(0), 0.0, 1e-15);
  EXPECT_NEAR(h(1), 0.0, 1e-15);
}

TEST(JumpToCoefficients, MatchesDirectVectorization) {
  std::mt19937_64 rng(17);
  for (int n : {2, 3}) {
    auto space = make_liouville_space(n);
    const CMatrix h0 = random_complex(n, n, rng);
    const CMatrix h = 0.5 * (h0 + h0.adjoint());
    // Jumps include an identity component.
    const CMatrix l1 = random_complex(n, n, rng) + Complex(0.7, -0.3) * CMatrix::Identity(n, n);
    const CMatrix l2 = random_complex(n, n, rng);
    JumpSpec js;
    js.n = n;
    js.hamiltonian = [h](double t) -> CMatrix { return std::cos(t) * h; };
    js.jumps.push_back({l1, [](double t) { return 1.0 + 0.5 * std::sin(t); }});
    js.jumps.push_back({l2, [](double t) { return 0.3 + t * t; }});
    const LiouvillianSpec s = jump_to_coefficients(js, space);
    for (double t : {0.0, 0.4, 1.9}) {
      const Superoperator direct = hamiltonian_superop(std::cos(t) * h) +
                                   (1.0 + 0.5 * std::sin(t)) * jump_dissipator(l1) +
                                   (0.3 + t * t) * jump_dissipator(l2);
      EXPECT_LT((assemble(s, t) - direct).cwiseAbs().maxCoeff(), 1e-12) << "n=" << n << " t=" << t;
    }
  }
}

TEST(LiouvillianProperties, TraceAndHermiticityPreservation) {
  std::mt19937_64 rng(23);
  for (int n : {2, 3}) {
    auto space = make_liouville_space(n);
    const int m = n * n - 1;
    RVector h(m);
    for (int i = 0; i < m; ++i) h(i) = std::normal_distribution<double>()(rng);
    const LiouvillianSpec s = constant_spec(space, h, random_psd(m, rng));
    const Superoperator l = assemble(s, 0.0);
    EXPECT_LT((trace_row(n) * l).cwiseAbs().maxCoeff(), 1e-10);
    const CMatrix rho = random_density(n, rng);
    const CMatrix out = devectorize(l * vectorize(rho));
    EXPECT_LT((out - out.adjoint()).cwiseAbs().maxCoeff(), 1e-10);
  }
}

TEST(LiouvillianProperties, ReprojectionRecoversCoefficients) {
  std::mt19937_64 rng(29);
  auto space = make_liouville_space(2);
  RVector h(3);
  h << 0.3, -1.1, 0.7;
  const CMatrix g = random_psd(3, rng);
  const Superoperator l = assemble(constant_spec(space, h, g), 0.0);
  const SuperopCoordinates c = project_onto_superop_basis(*space, l);
  EXPECT_LT(c.residual, 1e-10);
  EXPECT_LT((c.h.real() - h).cwiseAbs().maxCoeff(), 1e-10);
  EXPECT_LT(c.h.imag().cwiseAbs().maxCoeff(), 1e-10);
  EXPECT_LT((c.gamma - g).cwiseAbs().maxCoeff(), 1e-10);
}

TEST(Algebra, QubitHamiltonianCommutator) {
  const LiouvilleSpace s(2);
  const Superoperator c = s.H(1) * s.H(2) - s.H(2) * s.H(1);
  EXPECT_LT((c - std::sqrt(2.0) * s.H(3)).cwiseAbs().maxCoeff(), 1e-14);
}

TEST(Algebra, PolariserSubalgebra) {
  const auto& q = qubit_operators();
  auto comm = [](const CMatrix& a, const CMatrix& b) { return (a * b - b * a).eval(); };
  EXPECT_LT((comm(q.D_up, q.D_down) - (q.D_up - q.D_down)).cwiseAbs().maxCoeff(), 1e-14);
  EXPECT_LT(comm(q.H3, q.D_up).cwiseAbs().maxCoeff(), 1e-14);
  EXPECT_LT(comm(q.H3, q.D_down).cwiseAbs().maxCoeff(), 1e-14);
  EXPECT_LT(comm(q.D33, q.D_up).cwiseAbs().maxCoeff(), 1e-14);
  EXPECT_LT(comm(q.D33, q.H3).cwiseAbs().maxCoeff(), 1e-14);
}

TEST(Algebra, ClosureQubitExhaustive) {
  const LiouvilleSpace s(2);
  const AlgebraReport r = verify_algebra(s, structure_constants(s.basis()), 50);
  EXPECT_LT(r.max_deviation(), 1e-12);
  EXPECT_EQ(r.tuples_checked, 9 + 27 + 81);
}

TEST(Algebra, ClosureQutritSampled) {
  const LiouvilleSpace s(3);
  const AlgebraReport r = verify_algebra(s, structure_constants(s.basis()), 50);
  EXPECT_LT(r.max_hh, 1e-9);
  EXPECT_LT(r.max_hd, 1e-9);
  EXPECT_LT(r.max_dd, 1e-9);
}

TEST(Algebra, PerturbedConstantIsDetected) {
  const LiouvilleSpace s(2);
  StructureTensors t = structure_constants(s.basis());
  t.f_ref(1, 2, 3) += 1e-3;
  EXPECT_GT(verify_algebra(s, t, 50).max_deviation(), 1e-4);
}

TEST(DualDissipator, ZeroRates) {
  const LiouvillianSpec s = constant_spec(make_liouville_space(2), RVector::Zero(3), CMatrix::Zero(3, 3));
  EXPECT_EQ(dual_dissipator_expectation(s, CMatrix::Identity(2, 2) / 2.0, pauli::z(), 0.0), Complex{});
}

TEST(DualDissipator, PolarisersOnMixedState) {
  JumpSpec js;
  js.n = 2;
  js.jumps.push_back({pauli::plus(), [](double) { return 2.0; }});
  js.jumps.push_back({pauli::minus(), [](double) { return 3.0; }});
  const LiouvillianSpec s = jump_to_coefficients(js, make_liouville_space(2));
  const Complex v = dual_dissipator_expectation(s, CMatrix::Identity(2, 2) / 2.0, pauli::z(), 0.0);
  EXPECT_NEAR(v.real(), 2.0 - 3.0, 1e-14);
  EXPECT_NEAR(v.imag(), 0.0, 1e-14);
}

TEST(DualDissipator, Duality) {
  std::mt19937_64 rng(31);
  for (int n : {2, 3}) {
    auto space = make_liouville_space(n);
    const int m = n * n - 1;
    const CMatrix g = random_psd(m, rng);
    const LiouvillianSpec s = constant_spec(space, RVector::Zero(m), g);
    const CMatrix rho = random_density(n, rng);
    const CMatrix x0 = random_complex(n, n, rng);
    const CMatrix x = 0.5 * (x0 + x0.adjoint());
    const Complex lhs = dual_dissipator_expectation(s, rho, x, 0.0);
    const Complex rhs = (dissipator_action(space->basis(), g, rho) * x).trace();
    EXPECT_NEAR(std::abs(lhs - rhs), 0.0, 1e-12);
    EXPECT_THROW(dual_dissipator_expectation(s, CMatrix::Identity(n + 1, n + 1), x, 0.0), InvalidDimension);
  }
}

TEST(Breakpoints, PeriodicExpansion) {
  const auto b = breakpoints_between({0.0, 0.5, 1.0}, 1.0, 0.2, 2.7);
  const std::vector<double> expected = {0.5, 1.0, 1.5, 2.0, 2.5};
  ASSERT_EQ(b.size(), expected.size());
  for (std::size_t i = 0; i < b.size(); ++i) EXPECT_NEAR(b[i], expected[i], 1e-14);
}

}  // namespace
}  // namespace lindblad
