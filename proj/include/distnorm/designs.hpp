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

#ifndef DISTNORM_DESIGNS_HPP
#define DISTNORM_DESIGNS_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "distnorm/povm.hpp"

namespace distnorm {

struct DesignItem {
  double weight = 0.0;
  PureState vector;
};

/// Weighted ensemble of rank-1 projectors, claimed to be a spherical t-design.
///
/// Construction checks the weights and the 1-design property
/// sum_k p_k P_k = 1/d; the t-design property itself is measured by
/// design_defect, not assumed.
class WeightedDesign {
 public:
  static WeightedDesign validate(std::vector<DesignItem> items, int t);

  int dim() const { return items_.front().vector.dim(); }
  int order() const { return t_; }
  std::size_t size() const { return items_.size(); }
  /// All weights equal within 1e-12.
  bool proper() const { return proper_; }
  const std::vector<DesignItem>& items() const { return items_; }

 private:
  WeightedDesign(std::vector<DesignItem> items, int t, bool proper)
      : items_(std::move(items)), t_(t), proper_(proper) {}
  std::vector<DesignItem> items_;
  int t_ = 1;
  bool proper_ = false;
};

/// || sum_k p_k P_k^{(x)t} - P_sym^{(t)} / C(d+t-1, t) ||_F with P_sym built as
/// the average of the t! permutation operators. Rows are streamed, so memory
/// is O(n d^t); d^t may not exceed kDimensionCap.
double design_defect(const WeightedDesign& design, int t);

bool is_prime(int n);

/// The d+1 mutually unbiased bases for prime d, as unitary column matrices.
/// d = 2 uses the Z, X, Y eigenbases; odd d uses the computational basis and
/// the vectors w^{b j^2 + s j}/sqrt(d), w = exp(2 pi i/d).
std::vector<Matrix> mub_bases(int d);

/// Proper 2-design formed by all d(d+1) MUB vectors.
WeightedDesign mub_design(int d);

/// Bloch vectors of a regular tetrahedron; the qubit SIC.
std::vector<PureState> qubit_tetrahedron();

struct SicReport {
  int dim = 0;
  double max_overlap_deviation = 0.0;  // max_{i != j} | |<psi_i|psi_j>|^2 - 1/(d+1) |
  double defect = 0.0;                 // design_defect(uniform weights, 2)
  bool passed = false;                 // both at most 1e-9
};

SicReport sic_validate(const std::vector<PureState>& vectors);

/// Uniformly weighted design over the given vectors.
WeightedDesign uniform_design(const std::vector<PureState>& vectors, int t);

/// Effects M_k = d p_k P_k.
Povm design_povm(const WeightedDesign& design);

struct TwoDesignAudit {
  int dim = 0;
  std::uint64_t trials = 0;
  double bound = 0.0;         // 1/(d+1)
  double min_distance = 0.0;  // min over trials of ||M(rho) - M(sigma)||_1
  std::uint64_t violations = 0;
  HermitianOp witness_rho;
  HermitianOp witness_sigma;
};

/// Samples `trials` orthogonal state pairs and checks
/// ||M(rho) - M(sigma)||_1 >= 1/(d+1) - 1e-9. Requires design_defect(., 2) <= 1e-6.
TwoDesignAudit two_design_bound_check(const WeightedDesign& design, std::uint64_t trials,
                                      const Rng& rng);

/// ||M(rho) - M(sigma)||_1 for the first two vectors of the first MUB basis.
double mub_same_basis_distance(int d);

/// Splits each (p_k, P_k) into floor(N p_k) copies of weight 1/N plus a
/// remainder (N p_k - floor(N p_k))/N, dropped when zero.
WeightedDesign refine_weighted_design(const WeightedDesign& design, int n_pieces);

/// The three quantities in the weighted 2-design argument for orthogonal
/// states rho, sigma, computed on the refinement with N pieces:
/// distance >= l1_inner_bound >= uniformised_bound = 1 - d/(d+1) (1 + n/N).
struct WeightedChain {
  double distance = 0.0;
  double l1_inner_bound = 0.0;
  double uniformised_bound = 0.0;
  std::size_t outcomes = 0;
};

WeightedChain weighted_two_design_chain(const WeightedDesign& design, int n_pieces,
                                        const HermitianOp& rho, const HermitianOp& sigma);

/// Moments of S = d tr(xi P) with P drawn from a design (or from the Haar
/// measure in the Monte-Carlo variant).
struct MomentReport {
  double second_moment = 0.0;
  std::optional<double> fourth_moment;
  double closed_form_second = 0.0;
  std::optional<double> closed_form_fourth;
  std::optional<double> berger_bound;         // (E S^2)^{3/2} / (E S^4)^{1/2}
  std::optional<double> closed_form_berger;   // same, from the closed forms
  double mean_abs = 0.0;                      // E|S|
  // Standard errors, present for Monte-Carlo reports only.
  std::optional<double> second_se;
  std::optional<double> fourth_se;
  std::optional<double> mean_abs_se;
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;
};

/// Exact moments over the design's items. Requires tr xi = 0.
MomentReport design_moments(const WeightedDesign& design, const HermitianOp& xi, bool include_fourth);

/// Monte-Carlo moments under the uniform POVM (a t-design for every t).
MomentReport uniform_moment_report(const HermitianOp& xi, std::uint64_t samples, const Rng& rng);

/// d/(d+1) tr xi^2.
double second_moment_closed_form(const HermitianOp& xi);
/// d^3/((d+1)(d+2)(d+3)) (3 (tr xi^2)^2 + 6 tr xi^4).
double fourth_moment_closed_form(const HermitianOp& xi);

struct FourDesignBound {
  double l2_bound = 0.0;  // ||xi||_2 / 3
  double l1_bound = 0.0;  // ||xi||_1 / (3 sqrt d)
};

FourDesignBound four_design_bias_bound(const HermitianOp& xi, int d);

/// Two distinct SIC elements: the computed trace distance against the value
/// 2d/(d+1) quoted in the literature, and the lambda upper bounds each gives.
struct SicTightness {
  int dim = 0;
  double measured_distance = 0.0;      // ||M(P_1) - M(P_2)||_1 = 2/(d+1)
  double trace_distance = 0.0;         // ||P_1 - P_2||_1 = 2 sqrt(d/(d+1))
  double quoted_trace_distance = 0.0;  // 2d/(d+1)
  double lambda_upper = 0.0;           // measured / trace = 1/sqrt(d(d+1))
  double quoted_lambda_upper = 0.0;    // 1/d
};

SicTightness sic_tightness(const WeightedDesign& sic);

}  // namespace distnorm

#endif  // DISTNORM_DESIGNS_HPP
