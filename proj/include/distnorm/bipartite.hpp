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

#ifndef DISTNORM_BIPARTITE_HPP
#define DISTNORM_BIPARTITE_HPP

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "distnorm/operator.hpp"

namespace distnorm {

/// Normalised symmetric and antisymmetric projectors on C^d (x) C^d.
struct HidingPair {
  int d = 0;
  HermitianOp sym;   // (1 + F)/(d(d+1))
  HermitianOp anti;  // (1 - F)/(d(d-1))
};

HidingPair hiding_pair(int d);

/// (sym - anti)/2, unit trace norm.
HermitianOp hiding_direction(int d);

/// Operator x1 * 1 + xF * F on C^d (x) C^d.
struct UUInvariantOp {
  int d = 2;
  double x1 = 0.0;
  double xF = 0.0;

  /// Projects onto span{1, F} and rejects the input unless it commutes with
  /// U (x) U: the reconstruction error and the change under an average of 20
  /// random U (x) U conjugations must both stay within 1e-9 (relative).
  static UUInvariantOp from_op(const HermitianOp& h);
  HermitianOp to_op() const;

  /// Coefficients on the symmetric / antisymmetric projectors.
  double sym_coefficient() const { return x1 + xF; }
  double anti_coefficient() const { return x1 - xF; }
};

/// Change of h under the average of `rounds` random U (x) U conjugations
/// (Frobenius norm), with a fixed internal seed.
double twirl_residual(const HermitianOp& h, int rounds = 20);

struct PptValue {
  double value = 0.0;  // max |tr(xi (2M - 1))|
  double x = 0.0;      // optimal M = x Pi_sym + y Pi_anti
  double y = 0.0;
  HermitianOp witness;                 // the optimal M
  double witness_min_ppt_eig = 0.0;    // min eigenvalue of M^Gamma and (1 - M)^Gamma
  std::vector<std::array<double, 2>> vertices;  // the feasible polygon
};

/// Exact PPT-restricted value on the U (x) U-invariant sector: a linear
/// program in (x, y), solved by enumerating the vertices of its feasible
/// polygon. Uses F^Gamma = d Phi, so M^Gamma has eigenvalues (x+y)/2 and
/// (x+y)/2 + d(x-y)/2.
PptValue ppt_norm_uu_invariant(const UUInvariantOp& xi);

struct SepBound {
  double coefficient = 0.0;  // 2 / 2^{n/2}
  double l2_bound = 0.0;     // coefficient * ||xi||_2
  double l1_bound = 0.0;     // coefficient * ||xi||_1 / sqrt(D)
};

/// Lower bounds on the separable-measurement norm for an n-party system.
SepBound sep_l2_lower_bound(const HermitianOp& xi, int parties);

/// t = tr xi^2, a = tr xi_A^2, b = tr xi_B^2.
struct PurityTerms {
  double t = 0.0;
  double a = 0.0;
  double b = 0.0;
};

PurityTerms purity_terms(const HermitianOp& xi);

struct SecondMoment {
  double value = 0.0;        // coefficient * (a + b + t)
  double coefficient = 0.0;  // dA dB / ((dA+1)(dB+1))
  PurityTerms terms;
};

/// Exact E S^2 for S = D tr((phi (x) psi) xi) under local Haar vectors.
SecondMoment local_uniform_second_moment(const HermitianOp& xi);

struct DiagramBound {
  double detailed = 0.0;  // 153t^2 + 126ta + 126tb + 9a^2 + 9b^2 + 30ab
  double envelope = 0.0;  // 153 (t + a + b)^2
  PurityTerms terms;
};

DiagramBound diagram_bound_rhs(const HermitianOp& xi);

/// (dA dB / ((dA+1)(dB+1)))^3 * 153 (t + a + b)^2, the fourth-moment ceiling.
double local_uniform_fourth_moment_upper(const HermitianOp& xi);

struct LocalBiasBound {
  double l2_bound = 0.0;  // ||xi||_2 / sqrt(153)
  double l1_bound = 0.0;  // ||xi||_1 / sqrt(153 D)
  // With xi = rho - sigma for orthogonal states:
  std::optional<double> state_bound;        // max(||rho||_2, ||sigma||_2) / sqrt(153)
  std::optional<int> min_rank;              // smaller of the two ranks
  std::optional<double> rank_bound;         // 1 / sqrt(153 r)
  std::optional<double> quoted_rank_bound;  // 1 / (13 r), the constant quoted in the literature
};

/// Guaranteed lower bounds on ||(U_A (x) U_B) xi||_1. Requires tr xi = 0.
LocalBiasBound local_bias_lower_bound(const HermitianOp& xi);
LocalBiasBound local_bias_lower_bound(const HermitianOp& rho, const HermitianOp& sigma);

/// phi (x) psi for independent Haar phi on C^dA, psi on C^dB.
Vector local_haar_vector(Shape shape, Rng& rng);

/// D E|tr((phi (x) psi) xi)|.
McEstimate mc_local_uniform_bias(const HermitianOp& xi, std::uint64_t samples, const Rng& rng);

/// E|S|, E S^2, E S^4 for S = D tr((phi (x) psi) xi).
std::array<McEstimate, 3> mc_local_uniform_moments(const HermitianOp& xi, std::uint64_t samples,
                                                   const Rng& rng);

struct ChainEntry {
  std::string bound_name;
  double value = 0.0;
  std::string provenance;  // analytic, monte_carlo, lp
  std::optional<double> std_error;
};

struct ChainReport {
  int d = 0;
  std::vector<ChainEntry> entries;
  bool monotone = false;
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;
};

/// Numeric form of the locality chain for a d x d system, ordered from the
/// local-uniform lower bound up to 2/(d+1). Monte-Carlo entries are compared
/// with 5 standard errors of slack, the rest with 1e-9.
ChainReport chain_report(int d, std::uint64_t samples, const Rng& rng);

}  // namespace distnorm

#endif  // DISTNORM_BIPARTITE_HPP
