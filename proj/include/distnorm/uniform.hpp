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

#ifndef DISTNORM_UNIFORM_HPP
#define DISTNORM_UNIFORM_HPP

#include <array>
#include <cstdint>

#include "distnorm/operator.hpp"

namespace distnorm {

/// Spectral split of a flat traceless direction xi = P/(2a) - Q/(2b) with
/// rank P = a, rank Q = b.
struct RankSplit {
  int a = 1;
  int b = 1;

  /// Validates a, b >= 1 and orders them so that a <= b.
  static RankSplit canonical(int a, int b);
  int d() const { return a + b; }
  double p() const { return static_cast<double>(a) / static_cast<double>(a + b); }
};

/// Exact bias of the uniform POVM on the flat split direction:
/// 1 - (1/d) sum_{k<a, l<b} p^k (1-p)^l C(k+l, k).
///
/// Terms come from the recurrence t_{k,l+1} = t_{k,l} (1-p)(k+l+1)/(l+1) kept
/// in (mantissa, binary exponent) form, so row starts p^k that underflow a
/// double at large d do not lose the O(1) central terms.
double split_bias_closed_form(RankSplit split);

struct LambdaUniform {
  double value = 0.0;
  RankSplit argmin;
};

/// min over 1 <= a <= d/2 of split_bias_closed_form(a, d - a). Every split is
/// evaluated; the balanced one is not assumed to win.
LambdaUniform lambda_uniform(int d);

/// (1/d) sum_{k=0}^{d/2-1} 2^{-2k} C(2k, k) for even d.
double lambda_uniform_even_form(int d);

/// sum_{l=0}^{k} 2^{-(k+l)} C(k+l, l), which is identically 1.
double binomial_partial_sum(int k);

/// d E|tr(psi psi^dagger xi)| over Haar psi.
McEstimate mc_uniform_bias(const HermitianOp& xi, std::uint64_t samples, const Rng& rng);

/// Moments of S = d tr(psi psi^dagger xi) under Haar psi: E|S|, E S^2, E S^4.
std::array<McEstimate, 3> mc_uniform_moments(const HermitianOp& xi, std::uint64_t samples,
                                             const Rng& rng);

/// Smallest admissible Monte-Carlo sample count.
inline constexpr std::uint64_t kMinSamples = 100;

}  // namespace distnorm

#endif  // DISTNORM_UNIFORM_HPP
