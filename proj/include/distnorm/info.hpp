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

#ifndef DISTNORM_INFO_HPP
#define DISTNORM_INFO_HPP

#include <cstdint>
#include <utility>
#include <vector>

#include "distnorm/designs.hpp"

namespace distnorm {

/// Weighted collection of density matrices {p_x, rho_x}.
class Ensemble {
 public:
  /// Probabilities nonnegative and summing to 1 within 1e-12; every state a
  /// density matrix of one common dimension.
  static Ensemble validate(std::vector<std::pair<double, HermitianOp>> items);

  int dim() const { return average_.dim(); }
  const std::vector<std::pair<double, HermitianOp>>& items() const { return items_; }
  const HermitianOp& average() const { return average_; }

 private:
  Ensemble(std::vector<std::pair<double, HermitianOp>> items, HermitianOp average)
      : items_(std::move(items)), average_(std::move(average)) {}
  std::vector<std::pair<double, HermitianOp>> items_;
  HermitianOp average_;
};

/// `size` states with flat-Dirichlet probabilities; even-indexed states are
/// Haar-pure, odd-indexed ones drawn by random_density. `shape` is attached
/// to every state when given.
Ensemble random_ensemble(int size, int d, std::optional<Shape> shape, Rng& rng);

enum class EntropyOrder { Shannon, Renyi2 };

/// Entropy in bits. Rejects negative entries and vectors not summing to 1
/// within 1e-9.
double entropy(const std::vector<double>& dist, EntropyOrder order);

struct PinskerGap {
  double divergence = 0.0;  // D(p||q) in bits; +inf on a support violation
  double l1 = 0.0;
  double gap = 0.0;         // divergence - l1^2/(2 ln 2)
};

PinskerGap pinsker_gap(const std::vector<double>& p, const std::vector<double>& q);

/// ||p - q||_1 - (1 - n p.q).
double l1_inner_gap(const std::vector<double>& p, const std::vector<double>& q);
/// ||rho - sigma||_1 - (1 - n tr(rho sigma)), n the Hilbert dimension.
double quantum_l1_inner_gap(const HermitianOp& rho, const HermitianOp& sigma);
/// (1/2)||p - q||_1 - (1 - sum_i sqrt(p_i q_i)).
double fidelity_step_gap(const std::vector<double>& p, const std::vector<double>& q);

/// p = (x, 0, r, ..., r), q = (0, x, r, ..., r) with r = (1-x)/(n-2).
std::pair<std::vector<double>, std::vector<double>> montanaro_family(int n, double x);

/// (1 - n p.q) / ||p - q||_1 on the family.
double montanaro_ratio(int n, double x);

struct MontanaroSup {
  int n = 0;
  double x = 0.0;
  double ratio = 0.0;
};

/// Supremum of montanaro_ratio over x in (0, 0.2]: a grid of `grid` points
/// followed by golden-section refinement around the best one.
MontanaroSup montanaro_sup(int n, int grid = 2000);

double linear_entropy(const HermitianOp& rho);

struct MubCertainty {
  int dim = 0;
  double sum = 0.0;    // sum_b S_2(B_b(phi))
  double lower = 0.0;  // (d+1) log2((d+1)/2)
  double upper = 0.0;  // (d+1) log2 d - log2(d-1)
  bool passed = false;
};

MubCertainty mub_certainty_check(int d, const PureState& state);

struct DesignCertainty {
  int dim = 0;
  std::size_t outcomes = 0;
  double renyi_gap = 0.0;      // log2 n - S_2(M(phi))
  double shannon_gap = 0.0;    // log2 n - S(M(phi))
  double pinsker_term = 0.0;   // ||M(phi - 1/d)||_1^2 / (2 ln 2)
  double dimension_bound = 0.0;  // (d-1) / (4 ln 2 d (d+1)^2)
  double final_bound = 0.0;      // 1 / (6 ln 2 (d+1)^2)
  /// renyi_gap >= shannon_gap >= pinsker_term >= dimension_bound and
  /// pinsker_term >= final_bound, each within 1e-12.
  bool chain_holds = false;
  /// dimension_bound >= final_bound; this last constant step needs d >= 3.
  bool constants_ordered = false;
};

/// Requires a proper 2-design (defect at most 1e-6).
DesignCertainty design_certainty_check(const WeightedDesign& design, const PureState& state);

enum class AccessMode { Single, Bipartite };

struct AccessibleInfo {
  McEstimate estimate;           // I(X:U) or I(X:U_A (x) U_B), bits
  double linear_entropy_gap = 0.0;  // S_L(rho) - sum_x p_x S_L(rho_x)
  double constant = 0.0;         // 1/(18 ln 2) or 1/(306 ln 2)
  double bound = 0.0;            // constant * linear_entropy_gap
  bool passed = false;           // estimate >= bound - 5 s.e.
};

/// Monte-Carlo mutual information between the ensemble label and the
/// uniform (or local uniform) POVM outcome: each Haar sample psi contributes
/// sum_x p_x D q_x log2(q_x / q), q_x = <psi|rho_x|psi>, q = sum_x p_x q_x.
AccessibleInfo mc_accessible_info_lower(const Ensemble& ensemble, AccessMode mode, std::uint64_t samples,
                                        const Rng& rng);

}  // namespace distnorm

#endif  // DISTNORM_INFO_HPP
