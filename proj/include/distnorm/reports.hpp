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

#ifndef DISTNORM_REPORTS_HPP
#define DISTNORM_REPORTS_HPP

#include <cstdint>
#include <optional>

#include "distnorm/bipartite.hpp"
#include "distnorm/info.hpp"
#include "distnorm/io.hpp"
#include "distnorm/uniform.hpp"

namespace distnorm::reports {

/// Run parameters recorded in every report. `tol` is the comparison
/// tolerance of deterministic checks and may not go below tol::floor.
struct RunTags {
  std::uint64_t seed = 0;
  std::uint64_t samples = 0;
  double tol = 1e-9;
};

/// A report body plus its verdict. `body` always carries "command", "seed",
/// "samples", "tol" and "passed". passed == false means a bound was
/// violated.
struct Report {
  io::json body;
  bool passed = true;
};

/// (P_a / a - P_b / b) / 2 on C^d, the first a basis vectors positive and the
/// next b negative; unit trace norm.
HermitianOp rank_split_operator(int d, int a, int b);

Report lambda_uniform(int d, const RunTags& tags);
/// With `split`, xi must be rank_split_operator(d, a, b) and the estimate is
/// compared with the closed form.
Report mc_bias(const HermitianOp& xi, std::optional<RankSplit> split, const RunTags& tags);
Report mub(int d, const RunTags& tags);
Report design_check(const WeightedDesign& design, int t, const RunTags& tags);
/// Exact design moments (or Monte-Carlo uniform-POVM moments when `design`
/// is empty) on `trials` random traceless operators.
Report moments(const std::optional<WeightedDesign>& design, int d, int trials, const RunTags& tags);
/// tags.samples is the number of random orthogonal pairs.
Report two_design_audit(const WeightedDesign& design, const RunTags& tags);
Report bipartite(const HermitianOp& xi, const RunTags& tags);
Report hiding(int d, const RunTags& tags);
/// Random unit-trace-norm traceless operators on `shape`, or the single
/// operator `xi` (whose class table is then emitted as records).
Report perm_audit(Shape shape, int trials, const std::optional<HermitianOp>& xi, const RunTags& tags);
/// tags.samples Haar states; the design defaults to the MUB design for d.
Report certainty(int d, const std::optional<WeightedDesign>& design, const RunTags& tags);
/// tags.samples classical pairs of length n, quantum_trials density pairs
/// on C^n, and the Montanaro family for n in {10^2, 10^3, 10^4}.
Report l1_sweep(int n, std::uint64_t quantum_trials, const RunTags& tags);
Report accinfo(const Ensemble& ensemble, AccessMode mode, const RunTags& tags);
Report chain(int d, const RunTags& tags);

}  // namespace distnorm::reports

#endif  // DISTNORM_REPORTS_HPP
