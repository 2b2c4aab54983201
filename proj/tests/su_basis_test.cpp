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
#include <random>

#include <gtest/gtest.h>

#include "lindblad/su_basis.hpp"

namespace lindblad {
namespace {

CMatrix random_hermitian(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  CMatrix a(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a(i, j) = {g(rng), g(rng)};
  return 0.5 * (a + a.adjoint());
}

TEST(SuBasis, RejectsSingleLevel) {
  EXPECT_THROW(build_su_basis(1), InvalidDimension);
  EXPECT_THROW(build_su_basis(0), InvalidDimension);
}

TEST(SuBasis, QubitBasisIsScaledPauli) {
  const OperatorBasis b = build_su_basis(2);
  ASSERT_EQ(b.size(), 4);
  const double s = 1.0 / std::sqrt(2.0);
  CMatrix x(2, 2), y(2, 2), z(2, 2);
  x << 0, 1, 1, 0;
  y << 0, -kI, kI, 0;
  z << 1, 0, 0, -1;
  EXPECT_LT((b[0] - s * CMatrix::Identity(2, 2)).norm(), 1e-15);
  EXPECT_LT((b[1] - s * x).norm(), 1e-15);
  EXPECT_LT((b[2] - s * y).norm(), 1e-15);
  EXPECT_LT((b[3] - s * z).norm(), 1e-15);
}

TEST(SuBasis, QutritDiagonalGenerators) {
  const OperatorBasis b = build_su_basis(3);
  ASSERT_EQ(b.size(), 9);
  CMatrix m1 = CMatrix::Zero(3, 3), m2 = CMatrix::Zero(3, 3);
  m1.diagonal() << 1, -1, 0;
  m2.diagonal() << 1, 1, -2;
  EXPECT_LT((b[7] - m1 / std::sqrt(2.0)).norm(), 1e-15);
  EXPECT_LT((b[8] - m2 / std::sqrt(6.0)).norm(), 1e-15);
}

TEST(SuBasis, ElementCountsAndOrdering) {
  for (int n : {2, 3, 4, 5}) {
    const OperatorBasis b = build_su_basis(n);
    int re = 0, im = 0, diag = 0;
    for (const auto& l : b.labels) {
      re += l.kind == GeneratorKind::real_offdiagonal;
      im += l.kind == GeneratorKind::imag_offdiagonal;
      diag += l.kind == GeneratorKind::diagonal;
    }
    EXPECT_EQ(re, n * (n - 1) / 2);
    EXPECT_EQ(im, n * (n - 1) / 2);
    EXPECT_EQ(diag, n - 1);
    EXPECT_EQ(b.labels.front().kind, GeneratorKind::identity);
  }
}

class SuBasisDims : public ::testing::TestWithParam<int> {};

TEST_P(SuBasisDims, OrthonormalHermitianTraceless) {
  const int n = GetParam();
  const OperatorBasis b = build_su_basis(n);
  const CMatrix g = gram_matrix(b);
  EXPECT_LT((g - CMatrix::Identity(n * n, n * n)).cwiseAbs().maxCoeff(), 1e-12);
  for (int k = 1; k < b.size(); ++k) {
    EXPECT_LT((b[k] - b[k].adjoint()).cwiseAbs().maxCoeff(), 1e-15);
    EXPECT_LT(std::abs(b[k].trace()), 1e-14);
  }
}

TEST_P(SuBasisDims, TensorSymmetries) {
  const int n = GetParam();
  const StructureTensors t = structure_constants(build_su_basis(n));
  const int m = t.generator_count();
  for (int a = 1; a <= m; ++a)
    for (int b = 1; b <= m; ++b)
      for (int c = 1; c <= m; ++c) {
        EXPECT_NEAR(t.f(a, b, c), -t.f(b, a, c), 1e-12);
        EXPECT_NEAR(t.f(a, b, c), -t.f(a, c, b), 1e-12);
        EXPECT_NEAR(t.f(a, b, c), t.f(b, c, a), 1e-12);
        EXPECT_NEAR(t.d(a, b, c), t.d(b, a, c), 1e-12);
        EXPECT_EQ(t.z(a, b, c), Complex(t.f(a, b, c), -t.d(a, b, c)));
      }
}

TEST_P(SuBasisDims, CommutatorAndAnticommutatorReconstruction) {
  const int n = GetParam();
  const OperatorBasis basis = build_su_basis(n);
  const StructureTensors t = structure_constants(basis);
  const int m = t.generator_count();
  for (int a = 1; a <= m; ++a)
    for (int b = 1; b <= m; ++b) {
      CMatrix comm = kI * 0.0 * basis[0];
      CMatrix anti = (a == b ? 2.0 / n : 0.0) * CMatrix::Identity(n, n);
      for (int c = 1; c <= m; ++c) {
        comm += kI * t.f(a, b, c) * basis[c];
        anti += t.d(a, b, c) * basis[c];
      }
      EXPECT_LT((basis[a] * basis[b] - basis[b] * basis[a] - comm).cwiseAbs().maxCoeff(), 1e-10);
      EXPECT_LT((basis[a] * basis[b] + basis[b] * basis[a] - anti).cwiseAbs().maxCoeff(), 1e-10);
    }
}

TEST_P(SuBasisDims, JacobiIdentity) {
  const int n = GetParam();
  const StructureTensors t = structure_constants(build_su_basis(n));
  const int m = t.generator_count();
  double worst = 0.0;
  for (int a = 1; a <= m; ++a)
    for (int b = 1; b <= m; ++b)
      for (int c = 1; c <= m; ++c)
        for (int d = 1; d <= m; ++d) {
          double s = 0.0;
          for (int e = 1; e <= m; ++e)
            s += t.f(a, b, e) * t.f(e, c, d) + t.f(c, b, e) * t.f(a, e, d) + t.f(d, b, e) * t.f(a, c, e);
          worst = std::max(worst, std::abs(s));
        }
  EXPECT_LT(worst, 1e-9);
}

TEST_P(SuBasisDims, CompletenessOnRandomHermitian) {
  const int n = GetParam();
  const OperatorBasis b = build_su_basis(n);
  std::mt19937_64 rng(7 + n);
  for (int trial = 0; trial < 5; ++trial) {
    const CMatrix a = random_hermitian(n, rng);
    const CVector c = expand_in_basis(b, a);
    CMatrix back = CMatrix::Zero(n, n);
    for (int k = 0; k < b.size(); ++k) back += c(k) * b[k];
    EXPECT_LT((back - a).cwiseAbs().maxCoeff(), 1e-10);
  }
}

INSTANTIATE_TEST_SUITE_P(LevelCounts, SuBasisDims, ::testing::Values(2, 3, 4));

TEST(StructureConstants, QubitValues) {
  const StructureTensors t = structure_constants(build_su_basis(2));
  EXPECT_NEAR(t.f(1, 2, 3), std::sqrt(2.0), 1e-14);
  EXPECT_NEAR(t.f(2, 3, 1), std::sqrt(2.0), 1e-14);
  EXPECT_NEAR(t.f(3, 1, 2), std::sqrt(2.0), 1e-14);
  EXPECT_NEAR(t.f(2, 1, 3), -std::sqrt(2.0), 1e-14);
  for (int a = 1; a <= 3; ++a)
    for (int b = 1; b <= 3; ++b)
      for (int c = 1; c <= 3; ++c) EXPECT_NEAR(t.d(a, b, c), 0.0, 1e-15);
  EXPECT_NEAR(t.f(1, 1, 2), 0.0, 1e-15);
}

TEST(StructureConstants, IndexChecks) {
  const StructureTensors t = structure_constants(build_su_basis(2));
  EXPECT_THROW(t.f(0, 1, 1), IndexOutOfRange);
  EXPECT_THROW(t.d(1, 4, 1), IndexOutOfRange);
}

}  // namespace
}  // namespace lindblad
