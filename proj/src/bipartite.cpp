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

#include "distnorm/bipartite.hpp"

#include <sstream>

#include "distnorm/uniform.hpp"

namespace distnorm {

namespace {

constexpr double kTracelessTol = 1e-10;
constexpr double kInvariantTol = 1e-9;
constexpr std::uint64_t kTwirlSeed = 0x7477697231ULL;
const double kSqrt153 = std::sqrt(153.0);

void require_traceless(const HermitianOp& xi, const char* what) {
  if (std::abs(xi.trace()) > kTracelessTol * std::max(1.0, xi.matrix().cwiseAbs().maxCoeff())) {
    std::ostringstream os;
    os << what << ": operator must be traceless, trace = " << xi.trace();
    throw Error(ErrorCode::Validation, os.str());
  }
}

const Shape& require_shape(const HermitianOp& h, const char* what) {
  if (!h.shape()) {
    std::ostringstream os;
    os << what << ": operator has no bipartite shape";
    throw Error(ErrorCode::Validation, os.str());
  }
  return *h.shape();
}

void require_samples(std::uint64_t samples, const char* what) {
  if (samples < kMinSamples) {
    std::ostringstream os;
    os << what << ": need at least " << kMinSamples << " samples, got " << samples;
    throw Error(ErrorCode::Argument, os.str());
  }
}

int square_root_dim(const HermitianOp& h, const char* what) {
  if (h.shape()) {
    if (h.shape()->dA != h.shape()->dB) {
      std::ostringstream os;
      os << what << ": needs equal local dimensions";
      throw Error(ErrorCode::Validation, os.str());
    }
    return h.shape()->dA;
  }
  const int d = static_cast<int>(std::lround(std::sqrt(static_cast<double>(h.dim()))));
  if (d * d != h.dim()) {
    std::ostringstream os;
    os << what << ": dimension " << h.dim() << " is not a square";
    throw Error(ErrorCode::Validation, os.str());
  }
  return d;
}

// (U (x) U) X for X on C^d (x) C^d, column by column in O(d^5).
Matrix left_local(const Matrix& u, const Matrix& x) {
  const int d = static_cast<int>(u.rows());
  Matrix out(x.rows(), x.cols());
  for (Eigen::Index c = 0; c < x.cols(); ++c) {
    Matrix block(d, d);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) block(i, j) = x(i * d + j, c);
    const Matrix r = u * block * u.transpose();
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) out(i * d + j, c) = r(i, j);
  }
  return out;
}

Matrix uu_conjugate(const Matrix& u, const Matrix& x) {
  const Matrix left = left_local(u, x);
  return left_local(u, left.adjoint()).adjoint();
}

}  // namespace

HidingPair hiding_pair(int d) {
  if (d < 2) throw Error(ErrorCode::Argument, "hiding_pair: d must be at least 2");
  const Shape s{d, d};
  const Matrix f = swap_operator(d).matrix();
  const Matrix id = Matrix::Identity(d * d, d * d);
  const double dd = d;
  return {d, HermitianOp((id + f) / (dd * (dd + 1.0)), s), HermitianOp((id - f) / (dd * (dd - 1.0)), s)};
}

HermitianOp hiding_direction(int d) {
  const HidingPair hp = hiding_pair(d);
  return (hp.sym - hp.anti) * 0.5;
}

double twirl_residual(const HermitianOp& h, int rounds) {
  const int d = square_root_dim(h, "twirl_residual");
  Rng rng(kTwirlSeed);
  Matrix avg = Matrix::Zero(h.dim(), h.dim());
  for (int r = 0; r < rounds; ++r) avg += uu_conjugate(haar_unitary(d, rng), h.matrix());
  avg /= static_cast<double>(rounds);
  return (avg - h.matrix()).norm();
}

UUInvariantOp UUInvariantOp::from_op(const HermitianOp& h) {
  const int d = square_root_dim(h, "UUInvariantOp");
  const Matrix& m = h.matrix();
  const double tr = m.trace().real();
  double tr_f = 0.0;
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) tr_f += m(i * d + j, j * d + i).real();
  const double dd = d;
  // tr X = x1 d^2 + xF d, tr(XF) = x1 d + xF d^2.
  const double det = dd * dd * (dd * dd - 1.0);
  UUInvariantOp out{d, (tr * dd * dd - tr_f * dd) / det, (tr_f * dd * dd - tr * dd) / det};
  const double scale = std::max(1.0, m.norm());
  const double roundtrip = (out.to_op().matrix() - m).norm();
  const double twirl = twirl_residual(h);
  if (roundtrip > kInvariantTol * scale || twirl > kInvariantTol * scale) {
    std::ostringstream os;
    os << "operator is not U(x)U-invariant: span residual " << roundtrip << ", twirl residual " << twirl;
    throw Error(ErrorCode::Validation, os.str());
  }
  return out;
}

HermitianOp UUInvariantOp::to_op() const {
  const Matrix m = x1 * Matrix::Identity(d * d, d * d) + xF * swap_operator(d).matrix();
  return HermitianOp(m, Shape{d, d});
}

PptValue ppt_norm_uu_invariant(const UUInvariantOp& xi) {
  const double d = xi.d;
  // Constraint lines a x + b y = c bounding the feasible polygon.
  const std::array<std::array<double, 3>, 8> lines = {{{1, 0, 0},
                                                       {1, 0, 1},
                                                       {0, 1, 0},
                                                       {0, 1, 1},
                                                       {1, 1, 0},
                                                       {1 + d, 1 - d, 0},
                                                       {1, 1, 2},
                                                       {1 + d, 1 - d, 2}}};
  auto feasible = [d](double x, double y) {
    const double e = 1e-12;
    const double s = x + y, g = (1 + d) * x + (1 - d) * y;
    return x >= -e && x <= 1 + e && y >= -e && y <= 1 + e && s >= -e && s <= 2 + e && g >= -e && g <= 2 + e;
  };
  const double ds = d * (d + 1) / 2.0, da = d * (d - 1) / 2.0;
  const double cs = xi.sym_coefficient(), ca = xi.anti_coefficient();
  auto objective = [&](double x, double y) { return cs * (2 * x - 1) * ds + ca * (2 * y - 1) * da; };

  PptValue out;
  out.value = -1.0;
  for (std::size_t i = 0; i < lines.size(); ++i)
    for (std::size_t j = i + 1; j < lines.size(); ++j) {
      const auto& p = lines[i];
      const auto& q = lines[j];
      const double det = p[0] * q[1] - p[1] * q[0];
      if (std::abs(det) < 1e-14) continue;
      const double x = (p[2] * q[1] - p[1] * q[2]) / det;
      const double y = (p[0] * q[2] - p[2] * q[0]) / det;
      if (!feasible(x, y)) continue;
      bool seen = false;
      for (const auto& v : out.vertices) seen = seen || (std::abs(v[0] - x) < 1e-12 && std::abs(v[1] - y) < 1e-12);
      if (seen) continue;
      out.vertices.push_back({x, y});
      const double v = std::abs(objective(x, y));
      if (v > out.value) {
        out.value = v;
        out.x = x;
        out.y = y;
      }
    }

  const int n = xi.d * xi.d;
  const Matrix f = swap_operator(xi.d).matrix();
  const Matrix id = Matrix::Identity(n, n);
  const Matrix m = out.x * 0.5 * (id + f) + out.y * 0.5 * (id - f);
  const Shape s{xi.d, xi.d};
  out.x += 0.0;  // no negative zero in reports
  out.y += 0.0;
  out.witness = HermitianOp(m, s);
  const double lo1 = min_eigenvalue(partial_transpose(out.witness));
  const double lo2 = min_eigenvalue(partial_transpose(HermitianOp(id - m, s)));
  out.witness_min_ppt_eig = std::min(lo1, lo2);
  return out;
}

SepBound sep_l2_lower_bound(const HermitianOp& xi, int parties) {
  if (parties < 1) throw Error(ErrorCode::Argument, "sep_l2_lower_bound: parties must be positive");
  SepBound out;
  out.coefficient = 2.0 / std::pow(2.0, parties / 2.0);
  out.l2_bound = out.coefficient * hs_norm(xi);
  out.l1_bound = out.coefficient * trace_norm(xi) / std::sqrt(static_cast<double>(xi.dim()));
  return out;
}

PurityTerms purity_terms(const HermitianOp& xi) {
  require_shape(xi, "purity_terms");
  return {xi.matrix().squaredNorm(), partial_trace(xi, Party::B).matrix().squaredNorm(),
          partial_trace(xi, Party::A).matrix().squaredNorm()};
}

SecondMoment local_uniform_second_moment(const HermitianOp& xi) {
  const Shape& s = require_shape(xi, "local_uniform_second_moment");
  require_traceless(xi, "local_uniform_second_moment");
  SecondMoment out;
  out.terms = purity_terms(xi);
  out.coefficient = static_cast<double>(s.dA) * s.dB / ((s.dA + 1.0) * (s.dB + 1.0));
  out.value = out.coefficient * (out.terms.a + out.terms.b + out.terms.t);
  return out;
}

DiagramBound diagram_bound_rhs(const HermitianOp& xi) {
  require_shape(xi, "diagram_bound_rhs");
  require_traceless(xi, "diagram_bound_rhs");
  DiagramBound out;
  out.terms = purity_terms(xi);
  const double t = out.terms.t, a = out.terms.a, b = out.terms.b;
  out.detailed = 153.0 * t * t + 126.0 * t * a + 126.0 * t * b + 9.0 * a * a + 9.0 * b * b + 30.0 * a * b;
  out.envelope = 153.0 * (t + a + b) * (t + a + b);
  return out;
}

double local_uniform_fourth_moment_upper(const HermitianOp& xi) {
  const SecondMoment m = local_uniform_second_moment(xi);
  const double s = m.terms.t + m.terms.a + m.terms.b;
  return std::pow(m.coefficient, 3) * 153.0 * s * s;
}

LocalBiasBound local_bias_lower_bound(const HermitianOp& xi) {
  require_traceless(xi, "local_bias_lower_bound");
  LocalBiasBound out;
  out.l2_bound = hs_norm(xi) / kSqrt153;
  out.l1_bound = trace_norm(xi) / std::sqrt(153.0 * xi.dim());
  return out;
}

LocalBiasBound local_bias_lower_bound(const HermitianOp& rho, const HermitianOp& sigma) {
  require_density(rho, "local_bias_lower_bound");
  require_density(sigma, "local_bias_lower_bound");
  require_same_dim(rho, sigma);
  if (std::abs(hs_inner(rho, sigma)) > 1e-9)
    throw Error(ErrorCode::Validation, "local_bias_lower_bound: states must be orthogonal");
  LocalBiasBound out = local_bias_lower_bound(rho - sigma);
  out.state_bound = std::max(hs_norm(rho), hs_norm(sigma)) / kSqrt153;
  auto rank = [](const HermitianOp& h) {
    const Spectrum s = spectrum(h);
    int r = 0;
    for (double l : s.eigenvalues)
      if (l > 1e-9) ++r;
    return r;
  };
  out.min_rank = std::min(rank(rho), rank(sigma));
  out.rank_bound = 1.0 / std::sqrt(153.0 * *out.min_rank);
  out.quoted_rank_bound = 1.0 / (13.0 * *out.min_rank);
  return out;
}

Vector local_haar_vector(Shape shape, Rng& rng) {
  Vector phi(shape.dA), psi(shape.dB);
  for (int i = 0; i < shape.dA; ++i) phi(i) = cplx(rng.normal(), rng.normal());
  for (int i = 0; i < shape.dB; ++i) psi(i) = cplx(rng.normal(), rng.normal());
  phi.normalize();
  psi.normalize();
  Vector v(shape.dA * shape.dB);
  for (int i = 0; i < shape.dA; ++i) v.segment(i * shape.dB, shape.dB) = phi(i) * psi;
  return v;
}

namespace {

double local_sample(const HermitianOp& xi, const Shape& s, Rng& rng) {
  const Vector v = local_haar_vector(s, rng);
  return static_cast<double>(xi.dim()) * (v.adjoint() * xi.matrix() * v)(0, 0).real();
}

}  // namespace

McEstimate mc_local_uniform_bias(const HermitianOp& xi, std::uint64_t samples, const Rng& rng) {
  const Shape& s = require_shape(xi, "mc_local_uniform_bias");
  require_samples(samples, "mc_local_uniform_bias");
  return mc_accumulate<1>(samples, rng, [&](Rng& r) {
    return std::array<double, 1>{std::abs(local_sample(xi, s, r))};
  })[0];
}

std::array<McEstimate, 3> mc_local_uniform_moments(const HermitianOp& xi, std::uint64_t samples,
                                                   const Rng& rng) {
  const Shape& s = require_shape(xi, "mc_local_uniform_moments");
  require_samples(samples, "mc_local_uniform_moments");
  return mc_accumulate<3>(samples, rng, [&](Rng& r) {
    const double v = local_sample(xi, s, r);
    return std::array<double, 3>{std::abs(v), v * v, v * v * v * v};
  });
}

ChainReport chain_report(int d, std::uint64_t samples, const Rng& rng) {
  if (d < 2) throw Error(ErrorCode::Argument, "chain_report: d must be at least 2");
  const HermitianOp xi = hiding_direction(d);
  const double norm1 = trace_norm(xi);
  const double dd = d;
  ChainReport rep;
  rep.d = d;
  rep.samples = samples;
  rep.seed = rng.key();

  const McEstimate mc = mc_local_uniform_bias(xi, samples, rng);
  const PptValue ppt = ppt_norm_uu_invariant(UUInvariantOp::from_op(xi));
  rep.entries = {
      {"local_uniform_lower_1_over_sqrt153_d", 1.0 / (kSqrt153 * dd), "analytic", std::nullopt},
      {"local_uniform_on_hiding_direction", mc.mean / norm1, "monte_carlo", mc.std_error / norm1},
      {"sep_lower_1_over_d", 1.0 / dd, "analytic", std::nullopt},
      {"sep_l2_on_hiding_direction", sep_l2_lower_bound(xi, 2).l2_bound / norm1, "analytic", std::nullopt},
      {"ppt_on_hiding_direction", ppt.value / norm1, "lp", std::nullopt},
      {"hiding_upper_2_over_d_plus_1", 2.0 / (dd + 1.0), "analytic", std::nullopt},
  };
  rep.monotone = true;
  for (std::size_t i = 0; i + 1 < rep.entries.size(); ++i) {
    const auto& lo = rep.entries[i];
    const auto& hi = rep.entries[i + 1];
    const double slack = 1e-9 + 5.0 * (lo.std_error.value_or(0.0) + hi.std_error.value_or(0.0));
    if (lo.value > hi.value + slack) rep.monotone = false;
  }
  return rep;
}

}  // namespace distnorm
