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

#ifndef DISTNORM_OPERATOR_HPP
#define DISTNORM_OPERATOR_HPP

#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "distnorm/common.hpp"

namespace distnorm {

using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

/// Bipartite split d = dA * dB. Party A is the leading tensor factor.
struct Shape {
  int dA = 1;
  int dB = 1;
  bool operator==(const Shape&) const = default;
};

enum class Party { A, B };

/// Dense Hermitian operator, optionally tagged with a bipartite shape.
///
/// Construction checks Hermiticity relative to the largest entry magnitude
/// and replaces the input by (H + H^dagger)/2, so every stored operator is
/// exactly Hermitian.
class HermitianOp {
 public:
  HermitianOp() = default;
  explicit HermitianOp(const Matrix& m, std::optional<Shape> shape = std::nullopt);

  static HermitianOp zero(int d, std::optional<Shape> shape = std::nullopt);
  static HermitianOp identity(int d, std::optional<Shape> shape = std::nullopt);
  static HermitianOp diagonal(const std::vector<double>& diag);

  int dim() const { return static_cast<int>(m_.rows()); }
  const Matrix& matrix() const { return m_; }
  const std::optional<Shape>& shape() const { return shape_; }
  HermitianOp with_shape(Shape s) const;

  double trace() const { return m_.trace().real(); }

  HermitianOp operator+(const HermitianOp& o) const;
  HermitianOp operator-(const HermitianOp& o) const;
  HermitianOp operator*(double s) const;
  HermitianOp operator-() const { return *this * -1.0; }

 private:
  Matrix m_;
  std::optional<Shape> shape_;
};

inline HermitianOp operator*(double s, const HermitianOp& h) { return h * s; }

/// Unit vector in C^d.
class PureState {
 public:
  PureState() = default;
  /// Validates the norm against tol::unit_norm.
  explicit PureState(const Vector& amplitudes);
  /// Normalises a nonzero vector.
  static PureState normalized(const Vector& v);
  static PureState basis(int d, int k);

  int dim() const { return static_cast<int>(v_.size()); }
  const Vector& amplitudes() const { return v_; }
  HermitianOp projector() const;

 private:
  Vector v_;
};

/// Eigenvalues sorted descending.
struct Spectrum {
  std::vector<double> eigenvalues;
};

/// Ascending eigenvalues with orthonormal eigenvector columns.
struct Eigensystem {
  Eigen::VectorXd values;
  Matrix vectors;
};

Eigensystem eigensystem(const HermitianOp& h);
Spectrum spectrum(const HermitianOp& h);
double min_eigenvalue(const HermitianOp& h);

double trace_norm(const HermitianOp& h);
double hs_inner(const HermitianOp& a, const HermitianOp& b);
double hs_norm(const HermitianOp& a);

HermitianOp partial_trace(const HermitianOp& h, Party traced);
/// Transpose on party B in the computational basis.
HermitianOp partial_transpose(const HermitianOp& h);
HermitianOp tensor_product(const HermitianOp& a, const HermitianOp& b);
/// U H U^dagger.
HermitianOp conjugate(const HermitianOp& h, const Matrix& u);

bool is_density(const HermitianOp& h, double tolerance = tol::density_trace);
void require_density(const HermitianOp& h, const char* what);
void require_same_dim(const HermitianOp& a, const HermitianOp& b);
bool is_unitary(const Matrix& u, double tolerance = tol::unitary);

/// Swap operator F on C^d (x) C^d.
HermitianOp swap_operator(int d);

PureState haar_state(int d, Rng& rng);
/// Haar unitary via QR of a complex Ginibre matrix with phase correction.
Matrix haar_unitary(int d, Rng& rng);

/// Uniformly drawn density matrix with random spectrum on a Haar basis
/// (the eigenvalue weights are flat-Dirichlet).
HermitianOp random_density(int d, Rng& rng);

/// xi = (rho - sigma)/2 for orthogonal states: rho lives on the first
/// `rank_plus` columns of `basis` with the given weights, sigma on the rest.
/// With empty weight vectors both states are flat (normalised projectors).
HermitianOp split_direction(const Matrix& basis, int rank_plus,
                            const std::vector<double>& plus_weights = {},
                            const std::vector<double>& minus_weights = {});

/// xi = (rho - sigma)/2 for randomly drawn orthogonal states: random rank split
/// a in [1, d-1], Haar basis, flat-Dirichlet weights inside each block.
HermitianOp random_traceless_direction(int d, Rng& rng);

/// Same as above with the rank split fixed to (rank_plus, d - rank_plus).
HermitianOp random_traceless_direction(int d, int rank_plus, Rng& rng);

/// Random traceless Hermitian operator with Gaussian entries, scaled to unit
/// trace norm.
HermitianOp random_traceless(int d, Rng& rng, std::optional<Shape> shape = std::nullopt);

struct HelstromResult {
  double bias = 0.0;          // (1/2) ||rho - sigma||_1
  HermitianOp projector;      // projector onto the nonnegative eigenspace of rho - sigma
};

HelstromResult helstrom_bias(const HermitianOp& rho, const HermitianOp& sigma);

}  // namespace distnorm

#endif  // DISTNORM_OPERATOR_HPP
