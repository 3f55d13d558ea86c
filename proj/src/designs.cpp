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

#include "distnorm/designs.hpp"

#include <limits>
#include <numbers>
#include <numeric>
#include <sstream>

#include "distnorm/uniform.hpp"

namespace distnorm {

namespace {

constexpr double kWeightTol = 1e-10;
constexpr double kDesignTol = 1e-9;
constexpr double kTracelessTol = 1e-10;

void require_traceless(const HermitianOp& xi, const char* what) {
  const double tr = xi.trace();
  if (std::abs(tr) > kTracelessTol * std::max(1.0, xi.matrix().cwiseAbs().maxCoeff())) {
    std::ostringstream os;
    os << what << ": operator must be traceless, trace = " << tr;
    throw Error(ErrorCode::Validation, os.str());
  }
}

double binomial(int n, int k) {
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * static_cast<double>(n - k + i) / static_cast<double>(i);
  return r;
}

// Frobenius defect of an arbitrary weighted list of unit vectors.
double defect_impl(const std::vector<DesignItem>& items, int t) {
  if (t < 1) throw Error(ErrorCode::Argument, "design_defect: t must be at least 1");
  const int d = items.front().vector.dim();
  long long n_big = 1;
  for (int i = 0; i < t; ++i) {
    n_big *= d;
    if (n_big > kDimensionCap) {
      std::ostringstream os;
      os << "design_defect: d^t = " << d << "^" << t << " exceeds the cap " << kDimensionCap;
      throw Error(ErrorCode::CapExceeded, os.str());
    }
  }
  const int big = static_cast<int>(n_big);
  const int n = static_cast<int>(items.size());

  // Rows: tensor powers psi_k^{(x)t}.
  Matrix powers(n, big);
  Eigen::VectorXd weights(n);
  for (int k = 0; k < n; ++k) {
    Vector v = items[static_cast<std::size_t>(k)].vector.amplitudes();
    for (int s = 1; s < t; ++s) {
      Vector w(v.size() * d);
      for (Eigen::Index i = 0; i < v.size(); ++i) w.segment(i * d, d) = v(i) * items[static_cast<std::size_t>(k)].vector.amplitudes();
      v = std::move(w);
    }
    powers.row(k) = v.transpose();
    weights(k) = items[static_cast<std::size_t>(k)].weight;
  }

  std::vector<int> perm(static_cast<std::size_t>(t));
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<std::vector<int>> perms;
  do perms.push_back(perm);
  while (std::next_permutation(perm.begin(), perm.end()));
  const double sym_entry = 1.0 / (static_cast<double>(perms.size()) * binomial(d + t - 1, t));

  const Matrix conj_powers = powers.conjugate();
  std::vector<double> row_sq(static_cast<std::size_t>(big));
  parallel_for(static_cast<std::size_t>(big), [&](std::size_t r) {
    // Row r of sum_k p_k |v_k><v_k|.
    Eigen::RowVectorXcd row = (weights.cast<cplx>().cwiseProduct(powers.col(static_cast<Eigen::Index>(r)))).transpose() * conj_powers;
    std::vector<int> digits(static_cast<std::size_t>(t));
    std::size_t rest = r;
    for (int i = t - 1; i >= 0; --i) {
      digits[static_cast<std::size_t>(i)] = static_cast<int>(rest % static_cast<std::size_t>(d));
      rest /= static_cast<std::size_t>(d);
    }
    for (const auto& p : perms) {
      int c = 0;
      for (int i = 0; i < t; ++i) c = c * d + digits[static_cast<std::size_t>(p[static_cast<std::size_t>(i)])];
      row(c) -= sym_entry;
    }
    row_sq[r] = row.squaredNorm();
  });
  CompensatedSum total;
  for (double x : row_sq) total.add(x);
  return std::sqrt(total.value());
}

}  // namespace

WeightedDesign WeightedDesign::validate(std::vector<DesignItem> items, int t) {
  if (items.empty()) throw Error(ErrorCode::Validation, "design has no items");
  if (t < 1) throw Error(ErrorCode::Validation, "design order t must be at least 1");
  const int d = items.front().vector.dim();
  double total = 0.0;
  Matrix frame = Matrix::Zero(d, d);
  double wmin = std::numeric_limits<double>::infinity();
  double wmax = -wmin;
  for (std::size_t k = 0; k < items.size(); ++k) {
    const auto& it = items[k];
    if (it.vector.dim() != d) throw Error(ErrorCode::DimensionMismatch, "design mixes dimensions");
    if (!(it.weight >= 0.0) || !std::isfinite(it.weight)) {
      std::ostringstream os;
      os << "design weight " << k << " is not a nonnegative number: " << it.weight;
      throw Error(ErrorCode::Validation, os.str());
    }
    total += it.weight;
    wmin = std::min(wmin, it.weight);
    wmax = std::max(wmax, it.weight);
    frame += it.weight * it.vector.amplitudes() * it.vector.amplitudes().adjoint();
  }
  if (std::abs(total - 1.0) > kWeightTol) {
    std::ostringstream os;
    os << "design weights sum to " << total;
    throw Error(ErrorCode::Validation, os.str());
  }
  const double residual = (frame - Matrix::Identity(d, d) / static_cast<double>(d)).norm();
  if (residual > kDesignTol) {
    std::ostringstream os;
    os << "design is not a 1-design: ||sum p_k P_k - 1/d||_F = " << residual;
    throw Error(ErrorCode::Validation, os.str());
  }
  return WeightedDesign(std::move(items), t, wmax - wmin <= 1e-12);
}

double design_defect(const WeightedDesign& design, int t) { return defect_impl(design.items(), t); }

bool is_prime(int n) {
  if (n < 2) return false;
  for (int k = 2; k * k <= n; ++k)
    if (n % k == 0) return false;
  return true;
}

std::vector<Matrix> mub_bases(int d) {
  if (!is_prime(d)) {
    std::ostringstream os;
    os << "MUB construction supports prime dimensions only, got d = " << d;
    throw Error(ErrorCode::Unsupported, os.str());
  }
  std::vector<Matrix> bases;
  bases.push_back(Matrix::Identity(d, d));
  if (d == 2) {
    const double r = 1.0 / std::sqrt(2.0);
    Matrix x(2, 2), y(2, 2);
    x << r, r, r, -r;
    y << r, r, cplx(0, r), cplx(0, -r);
    bases.push_back(x);
    bases.push_back(y);
    return bases;
  }
  const double amp = 1.0 / std::sqrt(static_cast<double>(d));
  for (int b = 0; b < d; ++b) {
    Matrix m(d, d);
    for (int s = 0; s < d; ++s)
      for (int j = 0; j < d; ++j) {
        const long long phase = (static_cast<long long>(b) * j * j + static_cast<long long>(s) * j) % d;
        m(j, s) = std::polar(amp, 2.0 * std::numbers::pi * static_cast<double>(phase) / d);
      }
    bases.push_back(m);
  }
  return bases;
}

WeightedDesign mub_design(int d) {
  const std::vector<Matrix> bases = mub_bases(d);
  const double w = 1.0 / (static_cast<double>(d) * (d + 1));
  std::vector<DesignItem> items;
  for (const auto& b : bases)
    for (int s = 0; s < d; ++s) items.push_back({w, PureState::normalized(b.col(s))});
  return WeightedDesign::validate(std::move(items), 2);
}

std::vector<PureState> qubit_tetrahedron() {
  const double s2 = std::sqrt(2.0);
  const double bloch[4][3] = {{0.0, 0.0, 1.0},
                              {2.0 * s2 / 3.0, 0.0, -1.0 / 3.0},
                              {-s2 / 3.0, std::sqrt(2.0 / 3.0), -1.0 / 3.0},
                              {-s2 / 3.0, -std::sqrt(2.0 / 3.0), -1.0 / 3.0}};
  std::vector<PureState> out;
  for (const auto& v : bloch) {
    const double theta = std::acos(v[2]);
    const double phi = std::atan2(v[1], v[0]);
    Vector a(2);
    a << std::cos(theta / 2.0), std::polar(std::sin(theta / 2.0), phi);
    out.push_back(PureState::normalized(a));
  }
  return out;
}

WeightedDesign uniform_design(const std::vector<PureState>& vectors, int t) {
  if (vectors.empty()) throw Error(ErrorCode::Validation, "uniform_design: no vectors");
  std::vector<DesignItem> items;
  const double w = 1.0 / static_cast<double>(vectors.size());
  for (const auto& v : vectors) items.push_back({w, v});
  return WeightedDesign::validate(std::move(items), t);
}

SicReport sic_validate(const std::vector<PureState>& vectors) {
  if (vectors.empty()) throw Error(ErrorCode::Argument, "sic_validate: no vectors");
  const int d = vectors.front().dim();
  if (static_cast<int>(vectors.size()) != d * d) {
    std::ostringstream os;
    os << "sic_validate: expected d^2 = " << d * d << " vectors, got " << vectors.size();
    throw Error(ErrorCode::Argument, os.str());
  }
  SicReport rep;
  rep.dim = d;
  const double target = 1.0 / (d + 1.0);
  for (std::size_t i = 0; i < vectors.size(); ++i) {
    if (vectors[i].dim() != d) throw Error(ErrorCode::DimensionMismatch, "sic_validate: mixed dimensions");
    for (std::size_t j = i + 1; j < vectors.size(); ++j) {
      const double ov = std::norm(vectors[i].amplitudes().dot(vectors[j].amplitudes()));
      rep.max_overlap_deviation = std::max(rep.max_overlap_deviation, std::abs(ov - target));
    }
  }
  std::vector<DesignItem> items;
  for (const auto& v : vectors) items.push_back({1.0 / (d * d), v});
  rep.defect = defect_impl(items, 2);
  rep.passed = rep.max_overlap_deviation <= kDesignTol && rep.defect <= kDesignTol;
  return rep;
}

Povm design_povm(const WeightedDesign& design) {
  const double d = design.dim();
  std::vector<HermitianOp> effects;
  effects.reserve(design.size());
  for (const auto& it : design.items())
    effects.emplace_back((d * it.weight) * (it.vector.amplitudes() * it.vector.amplitudes().adjoint()));
  return Povm::validate(std::move(effects));
}

TwoDesignAudit two_design_bound_check(const WeightedDesign& design, std::uint64_t trials,
                                      const Rng& rng) {
  const double defect = design_defect(design, 2);
  if (defect > 1e-6) {
    std::ostringstream os;
    os << "two_design_bound_check: not a 2-design, defect " << defect;
    throw Error(ErrorCode::Validation, os.str());
  }
  if (trials < 1) throw Error(ErrorCode::Argument, "two_design_bound_check: trials must be positive");
  const Povm povm = design_povm(design);
  const int d = design.dim();
  const double bound = 1.0 / (d + 1.0);

  struct Chunk {
    double min = std::numeric_limits<double>::infinity();
    std::uint64_t violations = 0;
    HermitianOp witness;
  };
  const std::uint64_t chunks = (trials + kMcChunk - 1) / kMcChunk;
  std::vector<Chunk> partial(chunks);
  parallel_for(chunks, [&](std::size_t c) {
    Rng local = rng.split(c);
    Chunk acc;
    const std::uint64_t end = std::min<std::uint64_t>(trials, (c + 1) * kMcChunk);
    for (std::uint64_t s = c * kMcChunk; s < end; ++s) {
      HermitianOp xi = random_traceless_direction(d, local);
      const double dist = 2.0 * povm_norm(povm, xi);
      if (dist < bound - 1e-9) ++acc.violations;
      if (dist < acc.min) {
        acc.min = dist;
        acc.witness = std::move(xi);
      }
    }
    partial[c] = std::move(acc);
  });

  TwoDesignAudit audit;
  audit.dim = d;
  audit.trials = trials;
  audit.bound = bound;
  audit.min_distance = std::numeric_limits<double>::infinity();
  HermitianOp witness;
  for (auto& p : partial) {
    audit.violations += p.violations;
    if (p.min < audit.min_distance) {
      audit.min_distance = p.min;
      witness = p.witness;
    }
  }
  // rho - sigma = 2 xi with orthogonal supports.
  const Eigensystem es = eigensystem(witness);
  Matrix pos = Matrix::Zero(d, d), neg = Matrix::Zero(d, d);
  for (int i = 0; i < d; ++i) {
    const double l = 2.0 * es.values(i);
    const Matrix proj = es.vectors.col(i) * es.vectors.col(i).adjoint();
    if (l >= 0.0) pos += l * proj;
    else neg -= l * proj;
  }
  audit.witness_rho = HermitianOp(pos);
  audit.witness_sigma = HermitianOp(neg);
  return audit;
}

double mub_same_basis_distance(int d) {
  const WeightedDesign design = mub_design(d);
  const Povm povm = design_povm(design);
  const HermitianOp rho = design.items()[0].vector.projector();
  const HermitianOp sigma = design.items()[1].vector.projector();
  return povm_norm(povm, rho - sigma);
}

WeightedDesign refine_weighted_design(const WeightedDesign& design, int n_pieces) {
  if (n_pieces < static_cast<int>(design.size())) {
    std::ostringstream os;
    os << "refine_weighted_design: N = " << n_pieces << " is smaller than the item count "
       << design.size();
    throw Error(ErrorCode::Argument, os.str());
  }
  const double n = n_pieces;
  std::vector<DesignItem> items;
  for (const auto& it : design.items()) {
    double scaled = n * it.weight;
    // Weights like 1/9 at N = 36 land a few ulps off the integer.
    if (std::abs(scaled - std::round(scaled)) <= 1e-12 * std::max(1.0, scaled)) scaled = std::round(scaled);
    const double copies = std::floor(scaled);
    const double remainder = (scaled - copies) / n;
    if (remainder > 0.0) items.push_back({remainder, it.vector});
    for (int c = 0; c < static_cast<int>(copies); ++c) items.push_back({1.0 / n, it.vector});
  }
  return WeightedDesign::validate(std::move(items), design.order());
}

WeightedChain weighted_two_design_chain(const WeightedDesign& design, int n_pieces,
                                        const HermitianOp& rho, const HermitianOp& sigma) {
  require_density(rho, "weighted_two_design_chain");
  require_density(sigma, "weighted_two_design_chain");
  require_same_dim(rho, sigma);
  if (std::abs(hs_inner(rho, sigma)) > 1e-9)
    throw Error(ErrorCode::Validation, "weighted_two_design_chain: states must be orthogonal");
  const WeightedDesign refined = refine_weighted_design(design, n_pieces);
  const Povm povm = design_povm(refined);
  const std::vector<double> p = apply_povm(povm, rho);
  const std::vector<double> q = apply_povm(povm, sigma);
  WeightedChain out;
  out.outcomes = refined.size();
  double dot = 0.0;
  for (std::size_t k = 0; k < p.size(); ++k) {
    out.distance += std::abs(p[k] - q[k]);
    dot += p[k] * q[k];
  }
  const double d = design.dim();
  out.l1_inner_bound = 1.0 - static_cast<double>(out.outcomes) * dot;
  out.uniformised_bound =
      1.0 - d / (d + 1.0) * (1.0 + static_cast<double>(design.size()) / static_cast<double>(n_pieces));
  return out;
}

double second_moment_closed_form(const HermitianOp& xi) {
  const double d = xi.dim();
  return d / (d + 1.0) * xi.matrix().squaredNorm();
}

double fourth_moment_closed_form(const HermitianOp& xi) {
  const double d = xi.dim();
  const Matrix x2 = xi.matrix() * xi.matrix();
  const double t2 = x2.trace().real();
  const double t4 = x2.squaredNorm();
  return d * d * d / ((d + 1.0) * (d + 2.0) * (d + 3.0)) * (3.0 * t2 * t2 + 6.0 * t4);
}

namespace {

std::optional<double> berger(double second, double fourth) {
  if (fourth <= 0.0) return 0.0;
  return std::pow(second, 1.5) / std::sqrt(fourth);
}

}  // namespace

MomentReport design_moments(const WeightedDesign& design, const HermitianOp& xi, bool include_fourth) {
  require_traceless(xi, "design_moments");
  if (xi.dim() != design.dim()) throw Error(ErrorCode::DimensionMismatch, "design_moments: dimension mismatch");
  const double d = design.dim();
  CompensatedSum m1, m2, m4;
  for (const auto& it : design.items()) {
    const Vector& v = it.vector.amplitudes();
    const double s = d * (v.adjoint() * xi.matrix() * v)(0, 0).real();
    m1.add(it.weight * std::abs(s));
    m2.add(it.weight * s * s);
    m4.add(it.weight * s * s * s * s);
  }
  MomentReport rep;
  rep.mean_abs = m1.value();
  rep.second_moment = m2.value();
  rep.closed_form_second = second_moment_closed_form(xi);
  if (include_fourth) {
    rep.fourth_moment = m4.value();
    rep.closed_form_fourth = fourth_moment_closed_form(xi);
    rep.berger_bound = berger(rep.second_moment, *rep.fourth_moment);
    rep.closed_form_berger = berger(rep.closed_form_second, *rep.closed_form_fourth);
  }
  rep.samples = design.size();
  return rep;
}

MomentReport uniform_moment_report(const HermitianOp& xi, std::uint64_t samples, const Rng& rng) {
  require_traceless(xi, "uniform_moment_report");
  const auto mc = mc_uniform_moments(xi, samples, rng);
  MomentReport rep;
  rep.mean_abs = mc[0].mean;
  rep.mean_abs_se = mc[0].std_error;
  rep.second_moment = mc[1].mean;
  rep.second_se = mc[1].std_error;
  rep.fourth_moment = mc[2].mean;
  rep.fourth_se = mc[2].std_error;
  rep.closed_form_second = second_moment_closed_form(xi);
  rep.closed_form_fourth = fourth_moment_closed_form(xi);
  rep.berger_bound = berger(rep.second_moment, *rep.fourth_moment);
  rep.closed_form_berger = berger(rep.closed_form_second, *rep.closed_form_fourth);
  rep.samples = samples;
  rep.seed = rng.key();
  return rep;
}

FourDesignBound four_design_bias_bound(const HermitianOp& xi, int d) {
  require_traceless(xi, "four_design_bias_bound");
  if (xi.dim() != d) throw Error(ErrorCode::DimensionMismatch, "four_design_bias_bound: dimension mismatch");
  return {hs_norm(xi) / 3.0, trace_norm(xi) / (3.0 * std::sqrt(static_cast<double>(d)))};
}

SicTightness sic_tightness(const WeightedDesign& sic) {
  const int d = sic.dim();
  if (static_cast<int>(sic.size()) != d * d)
    throw Error(ErrorCode::Validation, "sic_tightness: design does not have d^2 elements");
  const Povm povm = design_povm(sic);
  const HermitianOp diff = sic.items()[0].vector.projector() - sic.items()[1].vector.projector();
  SicTightness out;
  out.dim = d;
  out.measured_distance = povm_norm(povm, diff);
  out.trace_distance = trace_norm(diff);
  out.quoted_trace_distance = 2.0 * d / (d + 1.0);
  out.lambda_upper = out.measured_distance / out.trace_distance;
  out.quoted_lambda_upper = out.measured_distance / out.quoted_trace_distance;
  return out;
}

}  // namespace distnorm
