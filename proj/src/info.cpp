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

#include "distnorm/info.hpp"

#include <limits>
#include <numbers>
#include <sstream>

#include "distnorm/bipartite.hpp"
#include "distnorm/uniform.hpp"

namespace distnorm {

namespace {

constexpr double kChainTol = 1e-12;
const double kLn2 = std::numbers::ln2;

void require_distribution(const std::vector<double>& p, const char* what) {
  if (p.empty()) throw Error(ErrorCode::Validation, std::string(what) + ": empty distribution");
  double total = 0.0;
  for (double x : p) {
    if (!(x >= 0.0) || !std::isfinite(x)) {
      std::ostringstream os;
      os << what << ": negative or non-finite entry " << x;
      throw Error(ErrorCode::Validation, os.str());
    }
    total += x;
  }
  if (std::abs(total - 1.0) > 1e-9) {
    std::ostringstream os;
    os << what << ": entries sum to " << total;
    throw Error(ErrorCode::Validation, os.str());
  }
}

void require_pair(const std::vector<double>& p, const std::vector<double>& q, const char* what) {
  require_distribution(p, what);
  require_distribution(q, what);
  if (p.size() != q.size()) throw Error(ErrorCode::DimensionMismatch, std::string(what) + ": length mismatch");
}

double l1(const std::vector<double>& p, const std::vector<double>& q) {
  double s = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) s += std::abs(p[i] - q[i]);
  return s;
}

}  // namespace

Ensemble Ensemble::validate(std::vector<std::pair<double, HermitianOp>> items) {
  if (items.empty()) throw Error(ErrorCode::Validation, "ensemble is empty");
  const int d = items.front().second.dim();
  double total = 0.0;
  Matrix avg = Matrix::Zero(d, d);
  for (std::size_t k = 0; k < items.size(); ++k) {
    const auto& [p, rho] = items[k];
    if (rho.dim() != d) throw Error(ErrorCode::DimensionMismatch, "ensemble mixes dimensions");
    if (!(p >= 0.0)) {
      std::ostringstream os;
      os << "ensemble probability " << k << " is negative: " << p;
      throw Error(ErrorCode::Validation, os.str());
    }
    require_density(rho, "ensemble state");
    total += p;
    avg += p * rho.matrix();
  }
  if (std::abs(total - 1.0) > tol::weight_sum) {
    std::ostringstream os;
    os << "ensemble probabilities sum to " << total;
    throw Error(ErrorCode::Validation, os.str());
  }
  HermitianOp average(avg, items.front().second.shape());
  return Ensemble(std::move(items), std::move(average));
}

Ensemble random_ensemble(int size, int d, std::optional<Shape> shape, Rng& rng) {
  if (size < 1) throw Error(ErrorCode::Argument, "random_ensemble: size must be positive");
  if (shape && shape->dA * shape->dB != d) throw Error(ErrorCode::DimensionMismatch, "random_ensemble: shape");
  std::vector<double> w(static_cast<std::size_t>(size));
  double total = 0.0;
  for (double& x : w) {
    x = -std::log(1.0 - rng.uniform());
    total += x;
  }
  std::vector<std::pair<double, HermitianOp>> items;
  for (int k = 0; k < size; ++k) {
    HermitianOp rho = k % 2 == 0 ? haar_state(d, rng).projector() : random_density(d, rng);
    if (shape) rho = rho.with_shape(*shape);
    items.emplace_back(w[static_cast<std::size_t>(k)] / total, std::move(rho));
  }
  return Ensemble::validate(std::move(items));
}

double entropy(const std::vector<double>& dist, EntropyOrder order) {
  require_distribution(dist, "entropy");
  if (order == EntropyOrder::Renyi2) {
    double s = 0.0;
    for (double x : dist) s += x * x;
    return -std::log2(s) + 0.0;
  }
  double h = 0.0;
  for (double x : dist)
    if (x > 0.0) h -= x * std::log2(x);
  return h + 0.0;
}

PinskerGap pinsker_gap(const std::vector<double>& p, const std::vector<double>& q) {
  require_pair(p, q, "pinsker_gap");
  PinskerGap out;
  out.l1 = l1(p, q);
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] == 0.0) continue;
    if (q[i] == 0.0) {
      out.divergence = std::numeric_limits<double>::infinity();
      out.gap = out.divergence;
      return out;
    }
    out.divergence += p[i] * std::log2(p[i] / q[i]);
  }
  out.gap = out.divergence - out.l1 * out.l1 / (2.0 * kLn2);
  return out;
}

double l1_inner_gap(const std::vector<double>& p, const std::vector<double>& q) {
  require_pair(p, q, "l1_inner_gap");
  double dot = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) dot += p[i] * q[i];
  return l1(p, q) - (1.0 - static_cast<double>(p.size()) * dot);
}

double quantum_l1_inner_gap(const HermitianOp& rho, const HermitianOp& sigma) {
  require_density(rho, "quantum_l1_inner_gap");
  require_density(sigma, "quantum_l1_inner_gap");
  require_same_dim(rho, sigma);
  return trace_norm(rho - sigma) - (1.0 - rho.dim() * hs_inner(rho, sigma));
}

double fidelity_step_gap(const std::vector<double>& p, const std::vector<double>& q) {
  require_pair(p, q, "fidelity_step_gap");
  double bc = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) bc += std::sqrt(p[i] * q[i]);
  return 0.5 * l1(p, q) - (1.0 - bc);
}

std::pair<std::vector<double>, std::vector<double>> montanaro_family(int n, double x) {
  if (n < 3) throw Error(ErrorCode::Argument, "montanaro_family: n must be at least 3");
  if (!(x > 0.0 && x <= 1.0)) throw Error(ErrorCode::Argument, "montanaro_family: x must lie in (0, 1]");
  const double r = (1.0 - x) / (n - 2);
  std::vector<double> p(static_cast<std::size_t>(n), r), q(static_cast<std::size_t>(n), r);
  p[0] = x;
  p[1] = 0.0;
  q[0] = 0.0;
  q[1] = x;
  return {p, q};
}

double montanaro_ratio(int n, double x) {
  const auto [p, q] = montanaro_family(n, x);
  double dot = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) dot += p[i] * q[i];
  return (1.0 - n * dot) / l1(p, q);
}

MontanaroSup montanaro_sup(int n, int grid) {
  if (grid < 3) throw Error(ErrorCode::Argument, "montanaro_sup: grid too small");
  const double hi = 0.2;
  MontanaroSup best{n, hi / grid, montanaro_ratio(n, hi / grid)};
  int best_i = 1;
  for (int i = 2; i <= grid; ++i) {
    const double x = hi * i / grid;
    const double r = montanaro_ratio(n, x);
    if (r > best.ratio) {
      best = {n, x, r};
      best_i = i;
    }
  }
  double a = hi * std::max(best_i - 1, 1) / grid / (best_i == 1 ? 2.0 : 1.0);
  double b = hi * std::min(best_i + 1, grid) / grid;
  const double g = (std::sqrt(5.0) - 1.0) / 2.0;
  for (int it = 0; it < 100 && b - a > 1e-15; ++it) {
    const double c = b - g * (b - a), d = a + g * (b - a);
    if (montanaro_ratio(n, c) > montanaro_ratio(n, d)) b = d;
    else a = c;
  }
  const double x = 0.5 * (a + b);
  const double r = montanaro_ratio(n, x);
  if (r > best.ratio) best = {n, x, r};
  return best;
}

double linear_entropy(const HermitianOp& rho) {
  require_density(rho, "linear_entropy");
  return 1.0 - rho.matrix().squaredNorm();
}

MubCertainty mub_certainty_check(int d, const PureState& state) {
  const std::vector<Matrix> bases = mub_bases(d);
  if (state.dim() != d) throw Error(ErrorCode::DimensionMismatch, "mub_certainty_check: state dimension");
  MubCertainty out;
  out.dim = d;
  for (const auto& b : bases) {
    const Vector amp = b.adjoint() * state.amplitudes();
    std::vector<double> p(static_cast<std::size_t>(d));
    for (int i = 0; i < d; ++i) p[static_cast<std::size_t>(i)] = std::norm(amp(i));
    double s = 0.0;
    for (double x : p) s += x;
    for (double& x : p) x /= s;
    out.sum += entropy(p, EntropyOrder::Renyi2);
  }
  const double dd = d;
  out.lower = (dd + 1.0) * std::log2((dd + 1.0) / 2.0);
  out.upper = (dd + 1.0) * std::log2(dd) - std::log2(dd - 1.0);
  out.passed = out.sum >= out.lower - kChainTol && out.sum <= out.upper + kChainTol;
  return out;
}

DesignCertainty design_certainty_check(const WeightedDesign& design, const PureState& state) {
  if (!design.proper()) throw Error(ErrorCode::Validation, "design_certainty_check: design is not proper");
  const double defect = design_defect(design, 2);
  if (defect > 1e-6) {
    std::ostringstream os;
    os << "design_certainty_check: not a 2-design, defect " << defect;
    throw Error(ErrorCode::Validation, os.str());
  }
  const int d = design.dim();
  if (state.dim() != d) throw Error(ErrorCode::DimensionMismatch, "design_certainty_check: state dimension");
  const Povm povm = design_povm(design);
  const HermitianOp phi = state.projector();
  std::vector<double> p = apply_povm(povm, phi);
  double s = 0.0;
  for (double& x : p) {
    x = std::max(x, 0.0);
    s += x;
  }
  for (double& x : p) x /= s;

  DesignCertainty out;
  out.dim = d;
  out.outcomes = p.size();
  const double logn = std::log2(static_cast<double>(p.size()));
  out.renyi_gap = logn - entropy(p, EntropyOrder::Renyi2);
  out.shannon_gap = logn - entropy(p, EntropyOrder::Shannon);
  const double dist = povm_norm(povm, phi - HermitianOp::identity(d) * (1.0 / d));
  out.pinsker_term = dist * dist / (2.0 * kLn2);
  const double dd = d;
  out.dimension_bound = (dd - 1.0) / (4.0 * kLn2 * dd * (dd + 1.0) * (dd + 1.0));
  out.final_bound = 1.0 / (6.0 * kLn2 * (dd + 1.0) * (dd + 1.0));
  out.chain_holds = out.renyi_gap >= out.shannon_gap - kChainTol &&
                    out.shannon_gap >= out.pinsker_term - kChainTol &&
                    out.pinsker_term >= out.dimension_bound - kChainTol &&
                    out.pinsker_term >= out.final_bound - kChainTol;
  out.constants_ordered = out.dimension_bound >= out.final_bound;
  return out;
}

AccessibleInfo mc_accessible_info_lower(const Ensemble& ensemble, AccessMode mode, std::uint64_t samples,
                                        const Rng& rng) {
  if (samples < kMinSamples) {
    std::ostringstream os;
    os << "mc_accessible_info_lower: need at least " << kMinSamples << " samples, got " << samples;
    throw Error(ErrorCode::Argument, os.str());
  }
  const int d = ensemble.dim();
  std::optional<Shape> shape;
  if (mode == AccessMode::Bipartite) {
    shape = ensemble.items().front().second.shape();
    if (!shape) throw Error(ErrorCode::Validation, "mc_accessible_info_lower: bipartite mode needs shaped states");
    for (const auto& [p, rho] : ensemble.items())
      if (rho.shape() != shape)
        throw Error(ErrorCode::Validation, "mc_accessible_info_lower: states disagree on the bipartite shape");
  }
  const auto& items = ensemble.items();
  AccessibleInfo out;
  out.estimate = mc_accumulate<1>(samples, rng, [&](Rng& r) {
    Vector v;
    if (shape) {
      v = local_haar_vector(*shape, r);
    } else {
      v.resize(d);
      for (int i = 0; i < d; ++i) v(i) = cplx(r.normal(), r.normal());
      v.normalize();
    }
    thread_local std::vector<double> qx;
    qx.resize(items.size());
    double q = 0.0;
    for (std::size_t x = 0; x < items.size(); ++x) {
      qx[x] = std::max(0.0, (v.adjoint() * items[x].second.matrix() * v)(0, 0).real());
      q += items[x].first * qx[x];
    }
    double val = 0.0;
    for (std::size_t x = 0; x < items.size(); ++x)
      if (qx[x] > 0.0 && items[x].first > 0.0) val += items[x].first * d * qx[x] * std::log2(qx[x] / q);
    return std::array<double, 1>{val};
  })[0];

  double mixed = 0.0;
  for (const auto& [p, rho] : items) mixed += p * linear_entropy(rho);
  out.linear_entropy_gap = linear_entropy(ensemble.average()) - mixed;
  out.constant = mode == AccessMode::Single ? 1.0 / (18.0 * kLn2) : 1.0 / (306.0 * kLn2);
  out.bound = out.constant * out.linear_entropy_gap;
  out.passed = out.estimate.mean >= out.bound - 5.0 * out.estimate.std_error;
  return out;
}

}  // namespace distnorm
