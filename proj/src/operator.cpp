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

#include "distnorm/operator.hpp"

#include <algorithm>
#include <sstream>

#include <Eigen/Eigenvalues>
#include <Eigen/QR>

namespace distnorm {

namespace {

void check_dim(int d, const char* what) {
  if (d < 1) throw Error(ErrorCode::Argument, std::string(what) + ": dimension must be positive");
  if (d > kDimensionCap) {
    std::ostringstream os;
    os << what << ": dimension " << d << " exceeds cap " << kDimensionCap;
    throw Error(ErrorCode::CapExceeded, os.str());
  }
}

const Shape& require_shape(const HermitianOp& h, const char* what) {
  if (!h.shape())
    throw Error(ErrorCode::Validation, std::string(what) + ": operator has no bipartite shape");
  return *h.shape();
}

std::vector<double> dirichlet(int n, Rng& rng) {
  std::vector<double> w(static_cast<std::size_t>(n));
  double total = 0.0;
  for (auto& x : w) {
    x = -std::log(1.0 - rng.uniform());
    total += x;
  }
  for (auto& x : w) x /= total;
  return w;
}

}  // namespace

HermitianOp::HermitianOp(const Matrix& m, std::optional<Shape> shape) : shape_(shape) {
  if (m.rows() != m.cols())
    throw Error(ErrorCode::Validation, "operator matrix is not square");
  check_dim(static_cast<int>(m.rows()), "operator");
  if (!m.allFinite()) throw Error(ErrorCode::Validation, "operator has non-finite entries");
  if (shape_ && shape_->dA * shape_->dB != m.rows()) {
    std::ostringstream os;
    os << "shape " << shape_->dA << "x" << shape_->dB << " does not match dimension " << m.rows();
    throw Error(ErrorCode::Validation, os.str());
  }
  const double scale = m.cwiseAbs().maxCoeff();
  const double asym = (m - m.adjoint()).cwiseAbs().maxCoeff();
  if (asym > tol::hermitian * scale) {
    std::ostringstream os;
    os << "operator is not Hermitian: max |H - H^dagger| = " << asym << " (scale " << scale << ")";
    throw Error(ErrorCode::Validation, os.str());
  }
  m_ = 0.5 * (m + m.adjoint());
}

HermitianOp HermitianOp::zero(int d, std::optional<Shape> shape) {
  return HermitianOp(Matrix::Zero(d, d), shape);
}

HermitianOp HermitianOp::identity(int d, std::optional<Shape> shape) {
  return HermitianOp(Matrix::Identity(d, d), shape);
}

HermitianOp HermitianOp::diagonal(const std::vector<double>& diag) {
  const int d = static_cast<int>(diag.size());
  Matrix m = Matrix::Zero(d, d);
  for (int i = 0; i < d; ++i) m(i, i) = diag[static_cast<std::size_t>(i)];
  return HermitianOp(m);
}

HermitianOp HermitianOp::with_shape(Shape s) const { return HermitianOp(m_, s); }

HermitianOp HermitianOp::operator+(const HermitianOp& o) const {
  require_same_dim(*this, o);
  return HermitianOp(m_ + o.m_, shape_ ? shape_ : o.shape_);
}

HermitianOp HermitianOp::operator-(const HermitianOp& o) const {
  require_same_dim(*this, o);
  return HermitianOp(m_ - o.m_, shape_ ? shape_ : o.shape_);
}

HermitianOp HermitianOp::operator*(double s) const { return HermitianOp(m_ * s, shape_); }

PureState::PureState(const Vector& amplitudes) : v_(amplitudes) {
  if (v_.size() < 1) throw Error(ErrorCode::Argument, "pure state needs dimension >= 1");
  const double n = v_.norm();
  if (!std::isfinite(n) || std::abs(n - 1.0) > tol::unit_norm) {
    std::ostringstream os;
    os << "pure state norm " << n << " differs from 1";
    throw Error(ErrorCode::Validation, os.str());
  }
}

PureState PureState::normalized(const Vector& v) {
  const double n = v.norm();
  if (!(n > 0.0) || !std::isfinite(n)) throw Error(ErrorCode::Validation, "cannot normalise zero vector");
  return PureState(v / n);
}

PureState PureState::basis(int d, int k) {
  Vector v = Vector::Zero(d);
  v(k) = 1.0;
  return PureState(v);
}

HermitianOp PureState::projector() const { return HermitianOp(v_ * v_.adjoint()); }

Eigensystem eigensystem(const HermitianOp& h) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(h.matrix());
  if (solver.info() != Eigen::Success) throw Error(ErrorCode::Validation, "eigensolver failed");
  return {solver.eigenvalues(), solver.eigenvectors()};
}

Spectrum spectrum(const HermitianOp& h) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(h.matrix(), Eigen::EigenvaluesOnly);
  Spectrum s;
  s.eigenvalues.assign(solver.eigenvalues().data(), solver.eigenvalues().data() + h.dim());
  std::sort(s.eigenvalues.begin(), s.eigenvalues.end(), std::greater<>());
  return s;
}

double min_eigenvalue(const HermitianOp& h) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(h.matrix(), Eigen::EigenvaluesOnly);
  return solver.eigenvalues()(0);
}

double trace_norm(const HermitianOp& h) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(h.matrix(), Eigen::EigenvaluesOnly);
  return solver.eigenvalues().cwiseAbs().sum();
}

double hs_inner(const HermitianOp& a, const HermitianOp& b) {
  require_same_dim(a, b);
  // tr(AB) = sum_ij A_ij B_ji, and B_ji = conj(B_ij) for Hermitian B.
  return (a.matrix().array() * b.matrix().array().conjugate()).sum().real();
}

double hs_norm(const HermitianOp& a) { return a.matrix().norm(); }

HermitianOp partial_trace(const HermitianOp& h, Party traced) {
  const Shape& s = require_shape(h, "partial_trace");
  const Matrix& m = h.matrix();
  if (traced == Party::B) {
    Matrix out = Matrix::Zero(s.dA, s.dA);
    for (int i = 0; i < s.dA; ++i)
      for (int k = 0; k < s.dA; ++k)
        for (int j = 0; j < s.dB; ++j) out(i, k) += m(i * s.dB + j, k * s.dB + j);
    return HermitianOp(out);
  }
  Matrix out = Matrix::Zero(s.dB, s.dB);
  for (int j = 0; j < s.dB; ++j)
    for (int l = 0; l < s.dB; ++l)
      for (int i = 0; i < s.dA; ++i) out(j, l) += m(i * s.dB + j, i * s.dB + l);
  return HermitianOp(out);
}

HermitianOp partial_transpose(const HermitianOp& h) {
  const Shape& s = require_shape(h, "partial_transpose");
  const Matrix& m = h.matrix();
  Matrix out(m.rows(), m.cols());
  for (int i = 0; i < s.dA; ++i)
    for (int j = 0; j < s.dB; ++j)
      for (int k = 0; k < s.dA; ++k)
        for (int l = 0; l < s.dB; ++l) out(i * s.dB + j, k * s.dB + l) = m(i * s.dB + l, k * s.dB + j);
  return HermitianOp(out, s);
}

HermitianOp tensor_product(const HermitianOp& a, const HermitianOp& b) {
  const long long d = static_cast<long long>(a.dim()) * b.dim();
  if (d > kDimensionCap) {
    std::ostringstream os;
    os << "tensor_product: dimension " << d << " exceeds cap " << kDimensionCap;
    throw Error(ErrorCode::CapExceeded, os.str());
  }
  const int da = a.dim(), db = b.dim();
  Matrix out(da * db, da * db);
  for (int i = 0; i < da; ++i)
    for (int k = 0; k < da; ++k) out.block(i * db, k * db, db, db) = a.matrix()(i, k) * b.matrix();
  return HermitianOp(out, Shape{da, db});
}

HermitianOp conjugate(const HermitianOp& h, const Matrix& u) {
  if (u.rows() != h.dim() || u.cols() != h.dim())
    throw Error(ErrorCode::DimensionMismatch, "conjugate: unitary dimension mismatch");
  return HermitianOp(u * h.matrix() * u.adjoint(), h.shape());
}

bool is_density(const HermitianOp& h, double tolerance) {
  return std::abs(h.trace() - 1.0) <= tolerance && min_eigenvalue(h) >= -tolerance;
}

void require_density(const HermitianOp& h, const char* what) {
  const double tr = h.trace();
  const double lo = min_eigenvalue(h);
  if (std::abs(tr - 1.0) > tol::density_trace || lo < -tol::psd) {
    std::ostringstream os;
    os << what << ": not a density matrix (trace " << tr << ", min eigenvalue " << lo << ")";
    throw Error(ErrorCode::Validation, os.str());
  }
}

void require_same_dim(const HermitianOp& a, const HermitianOp& b) {
  if (a.dim() != b.dim()) {
    std::ostringstream os;
    os << "dimension mismatch: " << a.dim() << " vs " << b.dim();
    throw Error(ErrorCode::DimensionMismatch, os.str());
  }
}

bool is_unitary(const Matrix& u, double tolerance) {
  if (u.rows() != u.cols()) return false;
  const Matrix e = u.adjoint() * u - Matrix::Identity(u.rows(), u.cols());
  return e.cwiseAbs().maxCoeff() <= tolerance;
}

HermitianOp swap_operator(int d) {
  Matrix f = Matrix::Zero(d * d, d * d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) f(i * d + j, j * d + i) = 1.0;
  return HermitianOp(f, Shape{d, d});
}

PureState haar_state(int d, Rng& rng) {
  if (d < 1) throw Error(ErrorCode::Argument, "haar_state: d must be >= 1");
  Vector v(d);
  for (int i = 0; i < d; ++i) v(i) = cplx(rng.normal(), rng.normal());
  return PureState::normalized(v);
}

Matrix haar_unitary(int d, Rng& rng) {
  if (d < 1) throw Error(ErrorCode::Argument, "haar_unitary: d must be >= 1");
  Matrix g(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) g(i, j) = cplx(rng.normal(), rng.normal());
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ();
  const Matrix& r = qr.matrixQR();
  for (int j = 0; j < d; ++j) {
    const cplx rjj = r(j, j);
    const double a = std::abs(rjj);
    if (a > 0.0) q.col(j) *= rjj / a;
  }
  return q;
}

HermitianOp random_density(int d, Rng& rng) {
  const Matrix u = haar_unitary(d, rng);
  const std::vector<double> w = dirichlet(d, rng);
  Matrix m = Matrix::Zero(d, d);
  for (int k = 0; k < d; ++k) m += w[static_cast<std::size_t>(k)] * u.col(k) * u.col(k).adjoint();
  return HermitianOp(m);
}

HermitianOp split_direction(const Matrix& basis, int rank_plus, const std::vector<double>& plus_weights,
                            const std::vector<double>& minus_weights) {
  const int d = static_cast<int>(basis.rows());
  const int rank_minus = d - rank_plus;
  if (rank_plus < 1 || rank_minus < 1)
    throw Error(ErrorCode::Argument, "split_direction: both ranks must be >= 1");
  std::vector<double> wp = plus_weights, wm = minus_weights;
  if (wp.empty()) wp.assign(static_cast<std::size_t>(rank_plus), 1.0 / rank_plus);
  if (wm.empty()) wm.assign(static_cast<std::size_t>(rank_minus), 1.0 / rank_minus);
  if (static_cast<int>(wp.size()) != rank_plus || static_cast<int>(wm.size()) != rank_minus)
    throw Error(ErrorCode::Argument, "split_direction: weight count does not match ranks");
  Matrix m = Matrix::Zero(d, d);
  for (int k = 0; k < rank_plus; ++k)
    m += (0.5 * wp[static_cast<std::size_t>(k)]) * basis.col(k) * basis.col(k).adjoint();
  for (int k = 0; k < rank_minus; ++k)
    m -= (0.5 * wm[static_cast<std::size_t>(k)]) * basis.col(rank_plus + k) * basis.col(rank_plus + k).adjoint();
  return HermitianOp(m);
}

HermitianOp random_traceless_direction(int d, int rank_plus, Rng& rng) {
  if (d < 2) throw Error(ErrorCode::Argument, "random_traceless_direction: d must be >= 2");
  const Matrix u = haar_unitary(d, rng);
  return split_direction(u, rank_plus, dirichlet(rank_plus, rng), dirichlet(d - rank_plus, rng));
}

HermitianOp random_traceless_direction(int d, Rng& rng) {
  if (d < 2) throw Error(ErrorCode::Argument, "random_traceless_direction: d must be >= 2");
  return random_traceless_direction(d, rng.uniform_int(1, d - 1), rng);
}

HermitianOp random_traceless(int d, Rng& rng, std::optional<Shape> shape) {
  if (d < 2) throw Error(ErrorCode::Argument, "random_traceless: d must be >= 2");
  Matrix g(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) g(i, j) = cplx(rng.normal(), rng.normal());
  Matrix h = g + g.adjoint();
  h -= (h.trace() / static_cast<double>(d)) * Matrix::Identity(d, d);
  HermitianOp op(h, shape);
  return op * (1.0 / trace_norm(op));
}

HelstromResult helstrom_bias(const HermitianOp& rho, const HermitianOp& sigma) {
  require_same_dim(rho, sigma);
  require_density(rho, "helstrom_bias");
  require_density(sigma, "helstrom_bias");
  const Eigensystem es = eigensystem(rho - sigma);
  const int d = rho.dim();
  Matrix p = Matrix::Zero(d, d);
  double norm1 = 0.0;
  for (int k = 0; k < d; ++k) {
    const double lambda = es.values(k);
    norm1 += std::abs(lambda);
    if (lambda >= 0.0) p += es.vectors.col(k) * es.vectors.col(k).adjoint();
  }
  return {0.5 * norm1, HermitianOp(p)};
}

}  // namespace distnorm
