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

#ifndef DISTNORM_PERM_HPP
#define DISTNORM_PERM_HPP

#include <array>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "distnorm/operator.hpp"

namespace distnorm {

/// Permutation of four tensor slots, stored 0-based.
class Perm4 {
 public:
  Perm4() : images_{0, 1, 2, 3} {}
  /// Validates bijectivity of a 0-based image list.
  static Perm4 from_images(std::array<int, 4> images);

  int operator()(int i) const { return images_[static_cast<std::size_t>(i)]; }
  const std::array<int, 4>& images() const { return images_; }
  Perm4 compose(const Perm4& other) const;  // (this o other)(i) = this(other(i))
  Perm4 inverse() const;
  /// Cycle lengths sorted descending, e.g. {2, 1, 1}.
  std::vector<int> cycle_type() const;
  int cycle_count() const { return static_cast<int>(cycle_type().size()); }
  /// Cycle type as a compact label: "4", "31", "22", "211", "1111".
  std::string cycle_label() const;
  /// 1-based one-line notation, e.g. "2134".
  std::string to_string() const;
  bool operator==(const Perm4&) const = default;

 private:
  std::array<int, 4> images_;
};

/// The 24 elements of S_4 in lexicographic order of their images.
const std::vector<Perm4>& all_perms();

/// Orbit of (pi, sigma) pairs under simultaneous conjugation by S_4. Pair
/// indices are 24 * index(pi) + index(sigma) into all_perms().
struct PermPairClass {
  int class_id = 0;
  std::vector<int> members;
  int representative = 0;
  std::string cycle_type_a;
  std::string cycle_type_b;
  int swap_partner = 0;  // class of the (sigma, pi) pairs
};

const std::vector<PermPairClass>& r_conjugacy_classes();

/// Largest local dimension accepted by the pair-trace oracle.
inline constexpr int kPermLocalCap = 3;

struct PermTrace {
  double value = 0.0;
  double imag = 0.0;
};

/// tr((U_pi on A^4 (x) U_sigma on B^4) xi^{(x)4}) with
/// U_pi |i_1..i_4> = |i_{pi^-1(1)}..i_{pi^-1(4)}>. Evaluated as the index sum
/// sum_{a, b} prod_i xi[(a_{pi(i)}, b_{sigma(i)}), (a_i, b_i)].
PermTrace perm_unitary_trace(const Perm4& pi, const Perm4& sigma, const HermitianOp& xi);

/// All 576 pair traces, indexed like PermPairClass::members.
std::vector<PermTrace> all_pair_traces(const HermitianOp& xi);

struct ClassEqualityAudit {
  int worst_class = 0;
  double worst_spread = 0.0;
  double max_imag = 0.0;
  int violations = 0;
};

ClassEqualityAudit class_equality_audit(const HermitianOp& xi);
ClassEqualityAudit class_equality_audit(const std::vector<PermTrace>& traces);

/// tr((P_sym^(4) on A^4 (x) P_sym^(4) on B^4) xi^{(x)4}), evaluated in the
/// computational basis from the entries <j|P_sym|k> = 1/(number of distinct
/// rearrangements of j) when k rearranges j.
double symmetric_projector_trace(const HermitianOp& xi);

struct ProjectorConsistency {
  double pair_sum = 0.0;         // sum over all 576 pairs
  double projector_value = 0.0;  // 576 * symmetric_projector_trace
  double difference = 0.0;
  int violations = 0;            // mismatch beyond 1e-8 relative, or negative total
};

ProjectorConsistency projector_consistency(const HermitianOp& xi);
ProjectorConsistency projector_consistency(const HermitianOp& xi, const std::vector<PermTrace>& traces);

struct FourthSum {
  double brute_force = 0.0;   // sum_pi tr(U_pi x^{(x)4})
  double closed_form = 0.0;   // 3 (tr x^2)^2 + 6 tr x^4
};

FourthSum single_party_fourth_sum(const HermitianOp& x);

struct ClassBoundEntry {
  int class_id = 0;
  std::string representative;  // "pi:sigma", 1-based one-line notation
  int size = 0;
  std::string cycle_types;     // "A:B"
  double value = 0.0;
  std::optional<double> bound;
  double margin = 0.0;         // bound - value (or -|value| without a bound)
  bool shared_fixed_point = false;
};

struct ClassBoundAudit {
  std::vector<ClassBoundEntry> classes;
  int violations = 0;
  int unbounded_nonzero = 0;
  int fixed_point_nonzero = 0;
};

/// Checks every class value against the per-class bound keyed by the pair of
/// cycle types (party swap exchanges a and b). Pairs without a bound entry,
/// and pairs with a common fixed point, must vanish. Requires tr xi = 0.
ClassBoundAudit classwise_bound_audit(const HermitianOp& xi);
ClassBoundAudit classwise_bound_audit(const HermitianOp& xi, const std::vector<PermTrace>& traces);

/// Bound for the cycle-type pair, if one is tabulated.
std::optional<double> class_bound(const std::string& type_a, const std::string& type_b, double t,
                                  double a, double b);

struct AggregateAudit {
  double pair_sum = 0.0;
  double detailed_bound = 0.0;
  double projector_value = 0.0;  // tr((P_sym (x) P_sym) xi^{(x)4})
  double projector_bound = 0.0;  // detailed_bound / 576
  int violations = 0;
};

AggregateAudit aggregate_diagram_bound_audit(const HermitianOp& xi);
AggregateAudit aggregate_diagram_bound_audit(const HermitianOp& xi, const std::vector<PermTrace>& traces);

/// sum_pi d^{c(pi)} against d(d+1)(d+2)(d+3).
std::pair<double, double> symmetric_normalisation_check(int d);

/// All four audits on one operator.
struct PermAudit {
  ClassEqualityAudit equality;
  ProjectorConsistency projector;
  ClassBoundAudit bounds;
  AggregateAudit aggregate;
  int violations() const {
    return equality.violations + projector.violations + bounds.violations + aggregate.violations;
  }
};

PermAudit perm_audit(const HermitianOp& xi);

}  // namespace distnorm

#endif  // DISTNORM_PERM_HPP
