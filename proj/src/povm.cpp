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

#include "distnorm/povm.hpp"

#include <algorithm>
#include <limits>
#include <sstream>

#include <Eigen/SVD>

namespace distnorm {

namespace {

// tr(A B) for Hermitian A, B.
double trace_product(const Matrix& a, const Matrix& b) {
  return (a.array() * b.array().conjugate()).sum().real();
}

}  // namespace

Povm Povm::validate(std::vector<HermitianOp> effects) {
  if (effects.empty()) throw Error(ErrorCode::Validation, "POVM needs at least one effect");
  const int d = effects.front().dim();
  Matrix total = Matrix::Zero(d, d);
  for (std::size_t k = 0; k < effects.size(); ++k) {
    if (effects[k].dim() != d) {
      std::ostringstream os;
      os << "POVM effect " << k << " has dimension " << effects[k].dim() << ", expected " << d;
      throw Error(ErrorCode::DimensionMismatch, os.str());
    }
    const double lo = min_eigenvalue(effects[k]);
    if (lo < -tol::psd) {
      std::ostringstream os;
      os << "POVM effect " << k << " is not positive: min eigenvalue " << lo;
      throw Error(ErrorCode::Validation, os.str());
    }
    total += effects[k].matrix();
  }
  const double residual = (total - Matrix::Identity(d, d)).norm();
  if (residual > tol::completeness) {
    std::ostringstream os;
    os << "POVM effects do not sum to the identity: Frobenius residual " << residual;
    throw Error(ErrorCode::Validation, os.str());
  }
  return Povm(std::move(effects));
}

double Povm::completeness_residual() const {
  Matrix total = Matrix::Zero(dim(), dim());
  for (const auto& e : effects_) total += e.matrix();
  return (total - Matrix::Identity(dim(), dim())).norm();
}

Povm basis_povm(const Matrix& basis) {
  std::vector<HermitianOp> effects;
  effects.reserve(static_cast<std::size_t>(basis.cols()));
  for (int k = 0; k < basis.cols(); ++k) effects.emplace_back(basis.col(k) * basis.col(k).adjoint());
  return Povm::validate(std::move(effects));
}

TwoOutcomeTest TwoOutcomeTest::validate(HermitianOp effect) {
  const Spectrum s = spectrum(effect);
  if (s.eigenvalues.back() < -tol::psd || s.eigenvalues.front() > 1.0 + tol::psd) {
    std::ostringstream os;
    os << "two-outcome effect outside [0, 1]: spectrum in [" << s.eigenvalues.back() << ", "
       << s.eigenvalues.front() << "]";
    throw Error(ErrorCode::Validation, os.str());
  }
  return TwoOutcomeTest(std::move(effect));
}

Povm TwoOutcomeTest::as_povm() const {
  return Povm::validate({effect_, HermitianOp::identity(effect_.dim()) - effect_});
}

double TwoOutcomeTest::signed_value(const HermitianOp& xi) const {
  require_same_dim(xi, effect_);
  return 2.0 * trace_product(xi.matrix(), effect_.matrix()) - xi.trace();
}

MeasurementFamily MeasurementFamily::validate(std::vector<Povm> povms, std::string label) {
  if (povms.empty()) throw Error(ErrorCode::Validation, "measurement family is empty");
  const int d = povms.front().dim();
  for (const auto& p : povms)
    if (p.dim() != d) throw Error(ErrorCode::DimensionMismatch, "measurement family mixes dimensions");
  return {std::move(povms), std::move(label)};
}

std::vector<double> apply_povm(const Povm& p, const HermitianOp& h) {
  if (h.dim() != p.dim()) throw Error(ErrorCode::DimensionMismatch, "apply_povm: dimension mismatch");
  std::vector<double> out;
  out.reserve(p.size());
  for (const auto& m : p.effects()) out.push_back(trace_product(h.matrix(), m.matrix()));
  return out;
}

double povm_norm(const Povm& p, const HermitianOp& xi) {
  if (xi.dim() != p.dim()) throw Error(ErrorCode::DimensionMismatch, "povm_norm: dimension mismatch");
  double total = 0.0;
  for (const auto& m : p.effects()) total += std::abs(trace_product(xi.matrix(), m.matrix()));
  return total;
}

double bias(const Povm& p, const HermitianOp& rho, const HermitianOp& sigma) {
  require_density(rho, "bias");
  require_density(sigma, "bias");
  return 0.5 * povm_norm(p, rho - sigma);
}

TwoOutcomeTest two_outcome_reduce(const Povm& p, const HermitianOp& xi) {
  const std::vector<double> values = apply_povm(p, xi);
  Matrix m = Matrix::Zero(p.dim(), p.dim());
  for (std::size_t k = 0; k < p.size(); ++k)
    if (values[k] >= 0.0) m += p[k].matrix();
  return TwoOutcomeTest::validate(HermitianOp(m));
}

double family_norm(const MeasurementFamily& f, const HermitianOp& xi) {
  if (f.povms.empty()) throw Error(ErrorCode::Validation, "family_norm: empty family");
  double best = 0.0;
  for (const auto& p : f.povms) best = std::max(best, povm_norm(p, xi));
  return best;
}

Povm convex_combine(const std::vector<std::pair<double, Povm>>& parts) {
  if (parts.empty()) throw Error(ErrorCode::Validation, "convex_combine: no parts");
  double total = 0.0;
  for (const auto& [w, p] : parts) {
    if (w < 0.0) throw Error(ErrorCode::Validation, "convex_combine: negative weight");
    total += w;
  }
  if (std::abs(total - 1.0) > tol::weight_sum) {
    std::ostringstream os;
    os << "convex_combine: weights sum to " << total;
    throw Error(ErrorCode::Validation, os.str());
  }
  std::vector<HermitianOp> effects;
  for (const auto& [w, p] : parts)
    for (const auto& m : p.effects()) effects.push_back(m * w);
  return Povm::validate(std::move(effects));
}

Povm conjugate_povm(const Povm& p, const Matrix& u) {
  if (!is_unitary(u)) throw Error(ErrorCode::Validation, "conjugate_povm: matrix is not unitary");
  std::vector<HermitianOp> effects;
  effects.reserve(p.size());
  for (const auto& m : p.effects()) effects.push_back(conjugate(m, u));
  return Povm::validate(std::move(effects));
}

int effect_span_rank(const MeasurementFamily& f) {
  const int d = f.dim();
  std::size_t count = 0;
  for (const auto& p : f.povms) count += p.size();
  // Real coordinates of a Hermitian matrix: diagonal, then sqrt(2) Re and
  // sqrt(2) Im of the strict upper triangle (an isometry onto R^{d^2}).
  Eigen::MatrixXd coords(d * d, static_cast<Eigen::Index>(count));
  Eigen::Index col = 0;
  for (const auto& p : f.povms) {
    for (const auto& e : p.effects()) {
      const Matrix& m = e.matrix();
      int row = 0;
      for (int i = 0; i < d; ++i) coords(row++, col) = m(i, i).real();
      for (int i = 0; i < d; ++i)
        for (int j = i + 1; j < d; ++j) {
          coords(row++, col) = std::sqrt(2.0) * m(i, j).real();
          coords(row++, col) = std::sqrt(2.0) * m(i, j).imag();
        }
      ++col;
    }
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(coords);
  const auto& sv = svd.singularValues();
  int rank = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv(i) > 1e-9) ++rank;
  return rank;
}

bool is_separating(const MeasurementFamily& f) { return effect_span_rank(f) == f.dim() * f.dim(); }

namespace {

// Cayley transform of a random Hermitian generator with step `eps`: an exact
// unitary close to the identity.
Matrix random_near_identity(int d, double eps, Rng& rng) {
  Matrix h(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) h(i, j) = cplx(rng.normal(), rng.normal());
  h = (0.5 * (h + h.adjoint())).eval();
  h /= h.norm();
  const Matrix id = Matrix::Identity(d, d);
  const Matrix a = id + cplx(0.0, 0.5 * eps) * h;
  const Matrix b = id - cplx(0.0, 0.5 * eps) * h;
  return a * b.inverse();
}

// A traceless direction (rho - sigma)/2 in spectral parametrisation.
struct Direction {
  Matrix basis;
  int rank_plus = 1;
  std::vector<double> wp, wm;

  HermitianOp op() const { return split_direction(basis, rank_plus, wp, wm); }
};

std::vector<double> jitter_weights(const std::vector<double>& w, double eps, Rng& rng) {
  std::vector<double> out(w.size());
  double total = 0.0;
  for (std::size_t i = 0; i < w.size(); ++i) {
    out[i] = std::max(w[i], 1e-300) * std::exp(eps * rng.normal());
    total += out[i];
  }
  for (auto& x : out) x /= total;
  return out;
}

std::vector<double> renormalised(std::vector<double> w) {
  double total = 0.0;
  for (double x : w) total += x;
  for (auto& x : w) x = total > 0.0 ? x / total : 1.0 / static_cast<double>(w.size());
  return w;
}

// Moves one eigenvector across the split; `to_minus` picks the direction.
std::optional<Direction> rank_move(const Direction& dir, bool to_minus) {
  const int d = static_cast<int>(dir.basis.rows());
  Direction out = dir;
  if (to_minus) {
    if (dir.rank_plus <= 1) return std::nullopt;
    const int last = dir.rank_plus - 1;
    const double moved = dir.wp[static_cast<std::size_t>(last)];
    out.rank_plus = dir.rank_plus - 1;
    out.wp.assign(dir.wp.begin(), dir.wp.end() - 1);
    out.wm.insert(out.wm.begin(), moved);
  } else {
    if (d - dir.rank_plus <= 1) return std::nullopt;
    const double moved = dir.wm.front();
    out.rank_plus = dir.rank_plus + 1;
    out.wm.assign(dir.wm.begin() + 1, dir.wm.end());
    out.wp.push_back(moved);
  }
  out.wp = renormalised(out.wp);
  out.wm = renormalised(out.wm);
  return out;
}

struct LocalResult {
  double value;
  HermitianOp witness;
};

// Coordinate descent with step halving. `sign` = +1 minimises the family norm,
// -1 maximises it.
template <class Objective>
LocalResult refine(Direction dir, Objective&& objective, double sign, bool allow_split_moves,
                   bool allow_weight_moves, Rng& rng) {
  const int d = static_cast<int>(dir.basis.rows());
  HermitianOp best_op = dir.op();
  double best = sign * objective(best_op);
  double eps = 0.5;
  int stalls = 0;
  for (int iter = 0; iter < 400 && eps > 1e-4; ++iter) {
    std::optional<Direction> best_move;
    double best_move_value = best;
    HermitianOp best_move_op;
    auto consider = [&](Direction cand) {
      HermitianOp op = cand.op();
      const double v = sign * objective(op);
      if (v < best_move_value) {
        best_move_value = v;
        best_move = std::move(cand);
        best_move_op = std::move(op);
      }
    };
    for (int t = 0; t < 6; ++t) {
      Direction cand = dir;
      cand.basis = random_near_identity(d, eps, rng) * dir.basis;
      consider(std::move(cand));
    }
    if (allow_weight_moves) {
      for (int t = 0; t < 2; ++t) {
        Direction cand = dir;
        cand.wp = jitter_weights(dir.wp, eps, rng);
        cand.wm = jitter_weights(dir.wm, eps, rng);
        consider(std::move(cand));
      }
    }
    if (allow_split_moves) {
      for (bool to_minus : {true, false})
        if (auto cand = rank_move(dir, to_minus)) consider(std::move(*cand));
    }
    if (best_move) {
      const double improvement = (best - best_move_value) / std::max(std::abs(best), 1e-300);
      dir = std::move(*best_move);
      best = best_move_value;
      best_op = std::move(best_move_op);
      if (improvement < 1e-6) {
        if (++stalls >= 3) break;
      } else {
        stalls = 0;
      }
    } else {
      eps *= 0.5;
    }
  }
  return {sign * best, std::move(best_op)};
}

Direction random_direction(int d, Rng& rng) {
  Direction dir;
  dir.basis = haar_unitary(d, rng);
  dir.rank_plus = rng.uniform_int(1, d - 1);
  auto draw = [&](int n) {
    std::vector<double> w(static_cast<std::size_t>(n));
    for (auto& x : w) x = -std::log(1.0 - rng.uniform());
    return renormalised(w);
  };
  dir.wp = draw(dir.rank_plus);
  dir.wm = draw(d - dir.rank_plus);
  return dir;
}

Direction rank_one_direction(const Matrix& basis) {
  Direction dir;
  dir.basis = basis;
  dir.rank_plus = 1;
  dir.wp = {1.0};
  const int rest = static_cast<int>(basis.cols()) - 1;
  dir.wm.assign(static_cast<std::size_t>(rest), 0.0);
  dir.wm[0] = 1.0;
  return dir;
}

}  // namespace

DominationEstimate estimate_domination(const MeasurementFamily& f, const DominationOptions& opts,
                                       const Rng& rng) {
  if (!is_separating(f))
    throw Error(ErrorCode::Validation,
                "estimate_domination: family is not separating (lambda would be 0)");
  if (opts.samples < 1 || opts.restarts < 1 || opts.mu_samples < 1)
    throw Error(ErrorCode::Argument, "estimate_domination: sample counts must be positive");
  const int d = f.dim();
  auto objective = [&f](const HermitianOp& xi) { return family_norm(f, xi); };

  struct Partial {
    LocalResult lambda;
    LocalResult mu;
  };
  const int restarts = opts.restarts;
  std::vector<std::optional<Partial>> partial(static_cast<std::size_t>(restarts));
  parallel_for(static_cast<std::size_t>(restarts), [&](std::size_t r) {
    Rng local = rng.split(r);
    // lambda: best of this restart's share of random starts, then refine.
    const int share = std::max(1, opts.samples / restarts);
    Direction best_dir = random_direction(d, local);
    double best_val = objective(best_dir.op());
    for (int s = 1; s < share; ++s) {
      Direction cand = random_direction(d, local);
      const double v = objective(cand.op());
      if (v < best_val) {
        best_val = v;
        best_dir = std::move(cand);
      }
    }
    LocalResult lam = refine(best_dir, objective, +1.0, true, true, local);

    // mu: rank-1 pairs. Restart 0 also tries the extreme eigenvectors of
    // every effect, which hits eigenbasis pairs exactly.
    const int mu_share = std::max(1, opts.mu_samples / restarts);
    Direction mu_dir = rank_one_direction(haar_unitary(d, local));
    double mu_val = objective(mu_dir.op());
    auto try_mu = [&](Direction cand) {
      const double v = objective(cand.op());
      if (v > mu_val) {
        mu_val = v;
        mu_dir = std::move(cand);
      }
    };
    if (r == 0) {
      for (const auto& p : f.povms)
        for (const auto& e : p.effects()) {
          const Eigensystem es = eigensystem(e);
          Matrix basis(d, d);
          basis.col(0) = es.vectors.col(d - 1);
          for (int k = 1; k < d; ++k) basis.col(k) = es.vectors.col(k - 1);
          try_mu(rank_one_direction(basis));
        }
    }
    for (int s = 1; s < mu_share; ++s) try_mu(rank_one_direction(haar_unitary(d, local)));
    LocalResult mu = refine(mu_dir, objective, -1.0, false, false, local);
    partial[r] = Partial{std::move(lam), std::move(mu)};
  });

  DominationEstimate est;
  est.lambda_lower = opts.lambda_lower;
  est.mu_upper = opts.mu_upper;
  est.lambda_upper = std::numeric_limits<double>::infinity();
  est.mu_lower = -1.0;
  for (auto& p : partial) {
    if (p->lambda.value < est.lambda_upper) {
      est.lambda_upper = p->lambda.value;
      est.lambda_witness = p->lambda.witness;
    }
    if (p->mu.value > est.mu_lower) {
      est.mu_lower = p->mu.value;
      est.mu_witness = p->mu.witness;
    }
  }
  // Certified by recomputation on the stored witnesses.
  est.lambda_upper = objective(est.lambda_witness) / trace_norm(est.lambda_witness);
  est.mu_lower = objective(est.mu_witness) / trace_norm(est.mu_witness);
  return est;
}

}  // namespace distnorm
