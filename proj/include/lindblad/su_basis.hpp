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
#include <string>
#include <vector>

#include "lindblad/types.hpp"

namespace lindblad {

enum class GeneratorKind { identity, real_offdiagonal, imag_offdiagonal, diagonal };

struct GeneratorLabel {
  GeneratorKind kind;
  int i = 0;  // (i, k) pair for off-diagonal elements, q for diagonal (1-based)
  int k = 0;
};

/**
 * Complete orthonormal operator basis {F_0, ..., F_{n^2-1}} of an n-level system.
 *
 * F_0 = I/sqrt(n); the remaining elements are the hermitian traceless su(n)
 * generators ordered as: real off-diagonal K^{ik}, imaginary off-diagonal
 * J^{ik} (both lexicographic in i < k), then diagonal M^q for q = 1..n-1.
 * With this normalization tr(F_k^dagger F_l) = delta_kl for all k, l.
 */
struct OperatorBasis {
  int n = 0;
  std::vector<CMatrix> elements;
  std::vector<GeneratorLabel> labels;

  int size() const noexcept { return static_cast<int>(elements.size()); }
  /// Number of traceless generators, n^2 - 1.
  int generator_count() const noexcept { return size() - 1; }
  const CMatrix& operator[](int k) const { return elements.at(static_cast<std::size_t>(k)); }
};

inline OperatorBasis build_su_basis(int n) {
  if (n < 2) throw InvalidDimension("build_su_basis: level count must be >= 2, got " + std::to_string(n));
  OperatorBasis basis;
  basis.n = n;
  basis.elements.reserve(static_cast<std::size_t>(n * n));
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);

  basis.elements.push_back(CMatrix::Identity(n, n) / std::sqrt(static_cast<double>(n)));
  basis.labels.push_back({GeneratorKind::identity, 0, 0});

  for (int i = 0; i < n; ++i) {
    for (int k = i + 1; k < n; ++k) {
      CMatrix m = CMatrix::Zero(n, n);
      m(i, k) = inv_sqrt2;
      m(k, i) = inv_sqrt2;
      basis.elements.push_back(std::move(m));
      basis.labels.push_back({GeneratorKind::real_offdiagonal, i + 1, k + 1});
    }
  }
  for (int i = 0; i < n; ++i) {
    for (int k = i + 1; k < n; ++k) {
      CMatrix m = CMatrix::Zero(n, n);
      m(i, k) = -kI * inv_sqrt2;
      m(k, i) = kI * inv_sqrt2;
      basis.elements.push_back(std::move(m));
      basis.labels.push_back({GeneratorKind::imag_offdiagonal, i + 1, k + 1});
    }
  }
  for (int q = 1; q < n; ++q) {
    CMatrix m = CMatrix::Zero(n, n);
    const double norm = 1.0 / std::sqrt(static_cast<double>(q * (q + 1)));
    for (int k = 0; k < q; ++k) m(k, k) = norm;
    m(q, q) = -static_cast<double>(q) * norm;
    basis.elements.push_back(std::move(m));
    basis.labels.push_back({GeneratorKind::diagonal, q, 0});
  }
  return basis;
}

/**
 * su(n) structure tensors over the generator indices 1..n^2-1:
 *   f_abc = -i tr([F_a, F_b] F_c)   (totally antisymmetric)
 *   d_abc =    tr({F_a, F_b} F_c)   (symmetric)
 *   z_abc = f_abc - i d_abc
 * Stored dense; accessors take 1-based generator indices.
 */
class StructureTensors {
 public:
  StructureTensors() = default;
  explicit StructureTensors(int n) : n_(n), m_(n * n - 1), f_(cube(m_), 0.0), d_(cube(m_), 0.0) {}

  int n() const noexcept { return n_; }
  int generator_count() const noexcept { return m_; }

  double f(int a, int b, int c) const { return f_[offset(a, b, c)]; }
  double d(int a, int b, int c) const { return d_[offset(a, b, c)]; }
  Complex z(int a, int b, int c) const { return {f(a, b, c), -d(a, b, c)}; }

  double& f_ref(int a, int b, int c) { return f_[offset(a, b, c)]; }
  double& d_ref(int a, int b, int c) { return d_[offset(a, b, c)]; }

 private:
  static std::size_t cube(int m) { return static_cast<std::size_t>(m) * m * m; }
  std::size_t offset(int a, int b, int c) const {
    if (a < 1 || b < 1 || c < 1 || a > m_ || b > m_ || c > m_)
      throw IndexOutOfRange("StructureTensors: generator index out of range");
    return (static_cast<std::size_t>(a - 1) * m_ + (b - 1)) * m_ + (c - 1);
  }

  int n_ = 0;
  int m_ = 0;
  std::vector<double> f_;
  std::vector<double> d_;
};

inline StructureTensors structure_constants(const OperatorBasis& basis) {
  if (basis.n < 2 || basis.size() != basis.n * basis.n)
    throw InvalidDimension("structure_constants: invalid operator basis");
  const int m = basis.generator_count();
  StructureTensors t(basis.n);
  for (int a = 1; a <= m; ++a) {
    for (int b = 1; b <= m; ++b) {
      const CMatrix ab = basis[a] * basis[b];
      const CMatrix ba = basis[b] * basis[a];
      const CMatrix comm = ab - ba;
      const CMatrix anti = ab + ba;
      for (int c = 1; c <= m; ++c) {
        t.f_ref(a, b, c) = (-kI * (comm * basis[c]).trace()).real();
        t.d_ref(a, b, c) = (anti * basis[c]).trace().real();
      }
    }
  }
  return t;
}

/// Gram matrix tr(F_k^dagger F_l).
inline CMatrix gram_matrix(const OperatorBasis& basis) {
  const int s = basis.size();
  CMatrix g(s, s);
  for (int k = 0; k < s; ++k)
    for (int l = 0; l < s; ++l) g(k, l) = (basis[k].adjoint() * basis[l]).trace();
  return g;
}

/// Coefficients c_k = tr(F_k^dagger A), so that A = sum_k c_k F_k.
inline CVector expand_in_basis(const OperatorBasis& basis, const CMatrix& a) {
  CVector c(basis.size());
  for (int k = 0; k < basis.size(); ++k) c(k) = (basis[k].adjoint() * a).trace();
  return c;
}

}  // namespace lindblad
