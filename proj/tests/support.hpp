/*
 * Copyright 2026 The distnorm Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

// Small helpers shared by the unit tests. Oracles here deliberately avoid the
// library's own code paths.

#ifndef DISTNORM_TESTS_SUPPORT_HPP
#define DISTNORM_TESTS_SUPPORT_HPP

#include <Eigen/Dense>
#include <cmath>
#include <vector>

#include "distnorm/operator.hpp"

namespace testing {

using distnorm::cplx;
using distnorm::Matrix;
using distnorm::Vector;

inline Matrix pauli_x() {
  Matrix m(2, 2);
  m << 0, 1, 1, 0;
  return m;
}

inline Matrix pauli_y() {
  Matrix m(2, 2);
  m << 0, cplx(0, -1), cplx(0, 1), 0;
  return m;
}

inline Matrix pauli_z() {
  Matrix m(2, 2);
  m << 1, 0, 0, -1;
  return m;
}

/// Kronecker product written out entrywise.
inline Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j) out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

/// Sum of singular values: an eigen-solver-free trace norm.
inline double svd_trace_norm(const Matrix& m) {
  return Eigen::JacobiSVD<Matrix>(m).singularValues().sum();
}

/// Random complex matrix with Gaussian entries (not Hermitian).
inline Matrix gaussian_matrix(int d, distnorm::Rng& rng) {
  Matrix m(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) m(i, j) = cplx(rng.normal(), rng.normal());
  return m;
}

inline Matrix hermitian_part(const Matrix& m) { return (0.5 * (m + m.adjoint())).eval(); }

/// Mean and standard error of a sample.
struct Stats {
  double mean = 0.0;
  double se = 0.0;
};

inline Stats stats(const std::vector<double>& xs) {
  double s = 0.0, s2 = 0.0;
  for (double x : xs) s += x;
  const double n = static_cast<double>(xs.size());
  const double m = s / n;
  for (double x : xs) s2 += (x - m) * (x - m);
  return {m, std::sqrt(s2 / (n - 1.0) / n)};
}

}  // namespace testing

#endif  // DISTNORM_TESTS_SUPPORT_HPP
