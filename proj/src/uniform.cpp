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

#include "distnorm/uniform.hpp"

#include <sstream>

namespace distnorm {

namespace {

// Positive number m * 2^e with m kept near 1.
struct Scaled {
  double m = 1.0;
  int e = 0;

  void mul(double f) {
    m *= f;
    if (m > 0x1p+400 || m < 0x1p-400) normalize();
  }
  void normalize() {
    int shift = 0;
    m = std::frexp(m, &shift);
    e += shift;
  }
  double value() const { return std::ldexp(m, e); }
};

void require_samples(std::uint64_t samples, const char* what) {
  if (samples < kMinSamples) {
    std::ostringstream os;
    os << what << ": need at least " << kMinSamples << " samples, got " << samples;
    throw Error(ErrorCode::Argument, os.str());
  }
}

// d <psi|xi|psi> for a Haar psi drawn from `rng`.
double sample_s(const Matrix& xi, Vector& g, Rng& rng) {
  const int d = static_cast<int>(xi.rows());
  for (int i = 0; i < d; ++i) g(i) = cplx(rng.normal(), rng.normal());
  const double n2 = g.squaredNorm();
  return d * (g.adjoint() * xi * g)(0, 0).real() / n2;
}

}  // namespace

RankSplit RankSplit::canonical(int a, int b) {
  if (a < 1 || b < 1) {
    std::ostringstream os;
    os << "rank split needs a, b >= 1, got (" << a << ", " << b << ")";
    throw Error(ErrorCode::Argument, os.str());
  }
  return a <= b ? RankSplit{a, b} : RankSplit{b, a};
}

double split_bias_closed_form(RankSplit split) {
  const RankSplit s = RankSplit::canonical(split.a, split.b);
  const double d = s.d();
  const double p = static_cast<double>(s.a) / d;
  const double q = static_cast<double>(s.b) / d;
  // p^k q^l C(k+l, k) is the chance that a walk stepping right with
  // probability p and up with probability q visits (k, l), so the double sum
  // over k < a, l < b is the expected exit time from the rectangle. The walk
  // exits through (a, j) or (i, b), which gives two single sums.
  CompensatedSum sum;
  const auto edge = [&sum](int n, double x, double y, int m) {
    Scaled t;  // x^n y^j C(n-1+j, j)
    for (int i = 0; i < n; ++i) t.mul(x);
    for (int j = 0; j < m; ++j) {
      sum.add(static_cast<double>(n + j) * t.value());
      t.mul(y * static_cast<double>(n + j) / static_cast<double>(j + 1));
    }
  };
  edge(s.a, p, q, s.b);
  edge(s.b, q, p, s.a);
  return 1.0 - sum.value() / d;
}

LambdaUniform lambda_uniform(int d) {
  if (d < 2) throw Error(ErrorCode::Argument, "lambda_uniform: d must be at least 2");
  LambdaUniform best{split_bias_closed_form({1, d - 1}), RankSplit{1, d - 1}};
  for (int a = 2; a <= d / 2; ++a) {
    const double v = split_bias_closed_form({a, d - a});
    if (v < best.value) best = {v, RankSplit{a, d - a}};
  }
  return best;
}

double lambda_uniform_even_form(int d) {
  if (d < 2 || d % 2 != 0)
    throw Error(ErrorCode::Argument, "lambda_uniform_even_form: d must be even and at least 2");
  CompensatedSum sum;
  double c = 1.0;  // 2^{-2k} C(2k, k)
  for (int k = 0; k < d / 2; ++k) {
    sum.add(c);
    c *= (2.0 * k + 1.0) / (2.0 * k + 2.0);
  }
  return sum.value() / d;
}

double binomial_partial_sum(int k) {
  if (k < 0) throw Error(ErrorCode::Argument, "binomial_partial_sum: k must be nonnegative");
  CompensatedSum sum;
  Scaled t;  // 2^{-(k+l)} C(k+l, l)
  t.e = -k;
  for (int l = 0; l <= k; ++l) {
    sum.add(t.value());
    t.mul(0.5 * static_cast<double>(k + l + 1) / static_cast<double>(l + 1));
  }
  return sum.value();
}

McEstimate mc_uniform_bias(const HermitianOp& xi, std::uint64_t samples, const Rng& rng) {
  require_samples(samples, "mc_uniform_bias");
  const Matrix& m = xi.matrix();
  return mc_accumulate<1>(samples, rng, [&m](Rng& r) {
    thread_local Vector g;
    g.resize(m.rows());
    return std::array<double, 1>{std::abs(sample_s(m, g, r))};
  })[0];
}

std::array<McEstimate, 3> mc_uniform_moments(const HermitianOp& xi, std::uint64_t samples,
                                             const Rng& rng) {
  require_samples(samples, "mc_uniform_moments");
  const Matrix& m = xi.matrix();
  return mc_accumulate<3>(samples, rng, [&m](Rng& r) {
    thread_local Vector g;
    g.resize(m.rows());
    const double s = sample_s(m, g, r);
    const double s2 = s * s;
    return std::array<double, 3>{std::abs(s), s2, s2 * s2};
  });
}

}  // namespace distnorm
