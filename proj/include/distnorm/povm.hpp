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

#ifndef DISTNORM_POVM_HPP
#define DISTNORM_POVM_HPP

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "distnorm/operator.hpp"

namespace distnorm {

/// Finite POVM: positive effects summing to the identity.
class Povm {
 public:
  /// Checks positivity (min eigenvalue >= -tol::psd) and completeness
  /// (Frobenius residual <= tol::completeness). Errors name the violated
  /// invariant and its magnitude.
  static Povm validate(std::vector<HermitianOp> effects);

  int dim() const { return effects_.front().dim(); }
  std::size_t size() const { return effects_.size(); }
  const std::vector<HermitianOp>& effects() const { return effects_; }
  const HermitianOp& operator[](std::size_t k) const { return effects_[k]; }

  /// Frobenius norm of sum_k M_k - 1.
  double completeness_residual() const;

 private:
  explicit Povm(std::vector<HermitianOp> effects) : effects_(std::move(effects)) {}
  std::vector<HermitianOp> effects_;
};

/// Projective measurement onto the columns of an orthonormal basis.
Povm basis_povm(const Matrix& basis);

/// Two-outcome test (M, 1 - M) with 0 <= M <= 1.
class TwoOutcomeTest {
 public:
  static TwoOutcomeTest validate(HermitianOp effect);
  const HermitianOp& effect() const { return effect_; }
  Povm as_povm() const;
  /// tr(xi (2M - 1)).
  double signed_value(const HermitianOp& xi) const;

 private:
  explicit TwoOutcomeTest(HermitianOp effect) : effect_(std::move(effect)) {}
  HermitianOp effect_;
};

struct MeasurementFamily {
  std::vector<Povm> povms;
  std::string label;

  /// Non-empty, all POVMs on one dimension.
  static MeasurementFamily validate(std::vector<Povm> povms, std::string label = {});
  int dim() const { return povms.front().dim(); }
};

/// Outcome vector (tr(H M_k))_k.
std::vector<double> apply_povm(const Povm& p, const HermitianOp& h);

/// ||M(xi)||_1 = sum_k |tr(xi M_k)|.
double povm_norm(const Povm& p, const HermitianOp& xi);

/// (1/2) sum_k |tr((rho - sigma) M_k)|.
double bias(const Povm& p, const HermitianOp& rho, const HermitianOp& sigma);

/// Groups the outcomes with tr(xi M_k) >= 0 (ties go to the positive group).
TwoOutcomeTest two_outcome_reduce(const Povm& p, const HermitianOp& xi);

/// max over the family of povm_norm.
double family_norm(const MeasurementFamily& f, const HermitianOp& xi);

/// Direct-sum convex combination with effects p_i M^{(i)}_k.
Povm convex_combine(const std::vector<std::pair<double, Povm>>& parts);

/// Effects U M_k U^dagger.
Povm conjugate_povm(const Povm& p, const Matrix& u);

/// True iff the real span of all effects is the full d^2-dimensional space of
/// Hermitian operators.
bool is_separating(const MeasurementFamily& f);
/// Dimension of the real span of all effects.
int effect_span_rank(const MeasurementFamily& f);

struct DominationOptions {
  int samples = 200;        // random starting directions, shared across restarts
  int restarts = 4;         // independent RNG streams, each refined locally
  int mu_samples = 200;     // random rank-1 pairs for the mu witness
  std::optional<double> lambda_lower;  // analytic lower bound, when one is known
  double mu_upper = 1.0;
};

/// Certified brackets on the domination constants of a finite family.
///
/// lambda_upper and mu_lower are achieved by the stored witnesses: re-running
/// family_norm on the witness reproduces them exactly.
struct DominationEstimate {
  double lambda_upper = 1.0;
  std::optional<double> lambda_lower;
  double mu_lower = 0.0;
  double mu_upper = 1.0;
  HermitianOp lambda_witness;
  HermitianOp mu_witness;
};

DominationEstimate estimate_domination(const MeasurementFamily& f, const DominationOptions& opts,
                                       const Rng& rng);

}  // namespace distnorm

#endif  // DISTNORM_POVM_HPP
