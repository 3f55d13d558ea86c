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

#include <doctest.h>

#include <algorithm>
#include <array>

#include "distnorm/designs.hpp"
#include "support.hpp"

using namespace distnorm;
using namespace testing;

namespace {

Povm eigen_povm(const Matrix& pauli) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(pauli);
  return basis_povm(es.eigenvectors());
}

Povm z_basis() { return basis_povm(Matrix::Identity(2, 2)); }
Povm x_basis() { return eigen_povm(pauli_x()); }
Povm y_basis() { return eigen_povm(pauli_y()); }

const HermitianOp& half_z() {
  static const HermitianOp h = HermitianOp::diagonal({0.5, -0.5});
  return h;
}

// Direct sum of Z, X and Y bases with weight 1/3: the d = 2 MUB POVM.
Povm octahedron() { return convex_combine({{1.0 / 3, z_basis()}, {1.0 / 3, x_basis()}, {1.0 / 3, y_basis()}}); }

double l1_of_outcomes(const Povm& p, const HermitianOp& xi) {
  double s = 0.0;
  for (const auto& e : p.effects()) s += std::abs((xi.matrix() * e.matrix()).trace().real());
  return s;
}

}  // namespace

TEST_CASE("povm validation") {
  CHECK_NOTHROW(z_basis());
  CHECK_NOTHROW(Povm::validate({HermitianOp::identity(3)}));
  CHECK_THROWS_AS(Povm::validate({HermitianOp::diagonal({1.1, 0}), HermitianOp::diagonal({0, 1})}), Error);
  CHECK_THROWS_AS(Povm::validate({HermitianOp::diagonal({1.5, 0}), HermitianOp::diagonal({-0.5, 1})}), Error);
  CHECK_THROWS_AS(Povm::validate({}), Error);
  CHECK_THROWS_AS(Povm::validate({HermitianOp::identity(2), HermitianOp::zero(3)}), Error);
  // Eigen-solver noise below the tolerance is accepted.
  CHECK_NOTHROW(Povm::validate({HermitianOp::diagonal({1.0 + 5e-10, -5e-10}), HermitianOp::diagonal({-5e-10, 1.0 + 5e-10})}));
  try {
    Povm::validate({HermitianOp::diagonal({1.1, 0}), HermitianOp::diagonal({0, 1})});
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("sum to the identity") != std::string::npos);
    CHECK(std::string(e.what()).find("0.1") != std::string::npos);
  }
}

TEST_CASE("apply povm examples") {
  const auto z = apply_povm(z_basis(), PureState::basis(2, 0).projector());
  CHECK(z[0] == doctest::Approx(1.0));
  CHECK(z[1] == doctest::Approx(0.0));

  const Povm mub = design_povm(mub_design(2));
  std::vector<double> out = apply_povm(mub, PureState::basis(2, 0).projector());
  std::sort(out.begin(), out.end());
  const std::vector<double> expect = {0.0, 1.0 / 6, 1.0 / 6, 1.0 / 6, 1.0 / 6, 1.0 / 3};
  for (std::size_t i = 0; i < 6; ++i) CHECK(out[i] == doctest::Approx(expect[i]).epsilon(1e-12));

  Rng rng(1);
  for (int k = 0; k < 10; ++k) {
    const Povm p = conjugate_povm(mub, haar_unitary(2, rng));
    const auto q = apply_povm(p, HermitianOp::identity(2) * 0.5);
    double s = 0.0;
    for (std::size_t i = 0; i < q.size(); ++i) {
      s += q[i];
      CHECK(q[i] == doctest::Approx(p[i].trace() / 2));
    }
    CHECK(s == doctest::Approx(1.0).epsilon(1e-12));
  }
  CHECK_THROWS_AS(apply_povm(z_basis(), HermitianOp::identity(3)), Error);
}

TEST_CASE("bias examples") {
  const HermitianOp z0 = PureState::basis(2, 0).projector(), z1 = PureState::basis(2, 1).projector();
  CHECK(bias(z_basis(), z0, z1) == doctest::Approx(1.0));
  CHECK(bias(design_povm(mub_design(2)), z0, z1) == doctest::Approx(1.0 / 3).epsilon(1e-12));
  const auto tet = qubit_tetrahedron();
  const Povm sic = design_povm(uniform_design(tet, 2));
  CHECK(bias(sic, tet[0].projector(), tet[1].projector()) == doctest::Approx(1.0 / 3).epsilon(1e-12));
}

TEST_CASE("data processing: povm bias never exceeds the helstrom bias") {
  Rng rng(2);
  for (int k = 0; k < 1000; ++k) {
    const int d = std::array<int, 3>{2, 3, 5}[static_cast<std::size_t>(k % 3)];
    const Povm p = k % 2 ? basis_povm(haar_unitary(d, rng)) : design_povm(mub_design(d));
    const HermitianOp rho = random_density(d, rng), sigma = random_density(d, rng);
    const Povm q = conjugate_povm(p, haar_unitary(d, rng));
    CHECK(bias(q, rho, sigma) <= helstrom_bias(rho, sigma).bias + 1e-12);
    // Contraction of the induced map on a general Hermitian operator.
    const HermitianOp x(hermitian_part(gaussian_matrix(d, rng)));
    CHECK(l1_of_outcomes(q, x) <= trace_norm(x) + 1e-10);
  }
}

TEST_CASE("two-outcome reduction") {
  const TwoOutcomeTest t = two_outcome_reduce(z_basis(), half_z());
  CHECK((t.effect().matrix() - PureState::basis(2, 0).projector().matrix()).norm() < 1e-15);

  const TwoOutcomeTest all = two_outcome_reduce(design_povm(mub_design(3)), HermitianOp::zero(3));
  CHECK((all.effect().matrix() - Matrix::Identity(3, 3)).norm() < 1e-12);

  // Qubit MUB POVM: the Z-basis outcomes carry +-1/6 on xi = diag(1, -1)/2 and
  // the X, Y outcomes 0, so the grouped value is 1/3; on rho - sigma =
  // diag(1, -1) it doubles to the same-basis distance 2/(d+1) = 2/3.
  const TwoOutcomeTest m = two_outcome_reduce(design_povm(mub_design(2)), half_z());
  CHECK(m.signed_value(half_z()) == doctest::Approx(1.0 / 3).epsilon(1e-12));
  CHECK(m.signed_value(HermitianOp::diagonal({1, -1})) == doctest::Approx(2.0 / 3).epsilon(1e-12));

  Rng rng(3);
  for (int k = 0; k < 200; ++k) {
    const int d = std::array<int, 3>{2, 3, 5}[static_cast<std::size_t>(k % 3)];
    const Povm p = conjugate_povm(design_povm(mub_design(d)), haar_unitary(d, rng));
    const HermitianOp xi = random_traceless_direction(d, rng);
    const TwoOutcomeTest r = two_outcome_reduce(p, xi);
    CHECK(std::abs(r.signed_value(xi)) == doctest::Approx(povm_norm(p, xi)).epsilon(1e-12));
    CHECK(std::abs(r.signed_value(xi)) == doctest::Approx(l1_of_outcomes(p, xi)).epsilon(1e-12));
  }
}

TEST_CASE("family norm examples") {
  const MeasurementFamily zx = MeasurementFamily::validate({z_basis(), x_basis()}, "zx");
  CHECK(family_norm(zx, half_z()) == doctest::Approx(1.0));
  const MeasurementFamily x = MeasurementFamily::validate({x_basis()});
  CHECK(family_norm(x, half_z()) == doctest::Approx(0.0).epsilon(1e-15));
  for (int d : {2, 3, 5}) {
    const MeasurementFamily mub = MeasurementFamily::validate({design_povm(mub_design(d))});
    const Matrix b = mub_bases(d)[0];
    const HermitianOp xi = 0.5 * (PureState::normalized(b.col(0)).projector() - PureState::normalized(b.col(1)).projector());
    CHECK(family_norm(mub, xi) == doctest::Approx(1.0 / (d + 1)).epsilon(1e-12));
  }
  CHECK_THROWS_AS(MeasurementFamily::validate({}), Error);
  CHECK_THROWS_AS(MeasurementFamily::validate({z_basis(), Povm::validate({HermitianOp::identity(3)})}), Error);
}

TEST_CASE("convex combination is additive") {
  const Povm half = convex_combine({{0.5, z_basis()}, {0.5, x_basis()}});
  CHECK(povm_norm(half, half_z()) == doctest::Approx(0.5));
  CHECK_THROWS_AS(convex_combine({{0.5, z_basis()}, {0.6, x_basis()}}), Error);

  Rng rng(4);
  for (int k = 0; k < 100; ++k) {
    const Povm p = basis_povm(haar_unitary(3, rng)), q = design_povm(mub_design(3));
    const double w = rng.uniform();
    const Povm c = convex_combine({{w, p}, {1.0 - w, q}});
    const HermitianOp xi = random_traceless_direction(3, rng);
    CHECK(povm_norm(c, xi) == doctest::Approx(w * povm_norm(p, xi) + (1.0 - w) * povm_norm(q, xi)).epsilon(1e-12));
    const Povm only = convex_combine({{1.0, p}, {0.0, q}});
    CHECK(povm_norm(only, xi) == doctest::Approx(povm_norm(p, xi)).epsilon(1e-12));
    const Povm twice = convex_combine({{0.5, p}, {0.5, p}});
    CHECK(povm_norm(twice, xi) == doctest::Approx(povm_norm(p, xi)).epsilon(1e-12));
  }
}

TEST_CASE("conjugation covariance") {
  CHECK(povm_norm(conjugate_povm(z_basis(), Matrix::Identity(2, 2)), half_z()) == doctest::Approx(1.0));
  Matrix h(2, 2);
  h << 1, 1, 1, -1;
  h /= std::sqrt(2.0);
  const Povm hx = conjugate_povm(z_basis(), h);
  const Povm x = x_basis();
  // Same effects up to ordering.
  for (const auto& e : hx.effects()) {
    double best = 1e9;
    for (const auto& f : x.effects()) best = std::min(best, (e.matrix() - f.matrix()).norm());
    CHECK(best < 1e-12);
  }
  Rng rng(5);
  for (int k = 0; k < 100; ++k) {
    const Matrix u = haar_unitary(3, rng);
    const Povm p = design_povm(mub_design(3));
    const HermitianOp xi = random_traceless_direction(3, rng);
    CHECK(povm_norm(conjugate_povm(p, u), xi) ==
          doctest::Approx(povm_norm(p, conjugate(xi, u.adjoint()))).epsilon(1e-12));
  }
  CHECK_THROWS_AS(conjugate_povm(z_basis(), 2.0 * Matrix::Identity(2, 2)), Error);
}

TEST_CASE("separation") {
  CHECK(is_separating(MeasurementFamily::validate({design_povm(mub_design(2))})));
  CHECK_FALSE(is_separating(MeasurementFamily::validate({z_basis()})));
  const MeasurementFamily zxy = MeasurementFamily::validate({z_basis(), x_basis(), y_basis()});
  CHECK(effect_span_rank(zxy) == 4);
  CHECK(is_separating(zxy));
  CHECK(effect_span_rank(MeasurementFamily::validate({z_basis(), x_basis()})) == 3);
}

TEST_CASE("domination estimate: qubit MUB and single bases") {
  DominationOptions opts;
  const MeasurementFamily mub = MeasurementFamily::validate({octahedron()});
  const DominationEstimate est = estimate_domination(mub, opts, Rng(6));
  // lambda = 1/3 (norm (|r_x| + |r_y| + |r_z|)/3 for trace norm |r|), mu = 1/sqrt 3.
  CHECK(est.lambda_upper >= 1.0 / 3 - 1e-12);
  CHECK(est.lambda_upper <= 1.0 / 3 + 1e-3);
  CHECK(est.mu_lower <= 1.0 / std::sqrt(3.0) + 1e-12);
  CHECK(est.mu_lower >= 1.0 / std::sqrt(3.0) - 1e-3);
  // Witnesses certify the reported values.
  CHECK(povm_norm(octahedron(), est.lambda_witness) / trace_norm(est.lambda_witness) ==
        doctest::Approx(est.lambda_upper).epsilon(1e-12));
  CHECK(povm_norm(octahedron(), est.mu_witness) / trace_norm(est.mu_witness) ==
        doctest::Approx(est.mu_lower).epsilon(1e-12));
  CHECK(std::abs(est.lambda_witness.trace()) < 1e-10);

  const MeasurementFamily zxy = MeasurementFamily::validate({z_basis(), x_basis(), y_basis()});
  const DominationEstimate e2 = estimate_domination(zxy, opts, Rng(7));
  CHECK(e2.mu_lower == doctest::Approx(1.0).epsilon(1e-9));

  CHECK_THROWS_AS(estimate_domination(MeasurementFamily::validate({z_basis()}), opts, Rng(8)), Error);
}

TEST_CASE("lambda_1 >= lambda / 2 on arbitrary unit-trace-norm operators") {
  // For the qubit MUB POVM lambda = 1/3 exactly; every Hermitian X, traceless
  // or not, must then satisfy ||M(X)||_1 >= ||X||_1 / 6.
  const Povm p = octahedron();
  Rng rng(9);
  double worst = 1e9;
  for (int k = 0; k < 5000; ++k) {
    HermitianOp x(hermitian_part(gaussian_matrix(2, rng)));
    if (k % 3 == 0) x = x + HermitianOp::identity(2) * (rng.normal() * 3.0);
    worst = std::min(worst, povm_norm(p, x) / trace_norm(x));
  }
  CHECK(worst >= 1.0 / 6 - 1e-12);
}

TEST_CASE("symmetrisation does not lower lambda, and approaches the uniform value") {
  Rng rng(10);
  const Povm base = octahedron();
  std::vector<std::pair<double, Povm>> parts;
  const int n = 200;
  for (int k = 0; k < n; ++k) parts.emplace_back(1.0 / n, conjugate_povm(base, haar_unitary(2, rng)));
  const Povm avg = convex_combine(parts);
  DominationOptions opts;
  const DominationEstimate sym = estimate_domination(MeasurementFamily::validate({avg}), opts, Rng(11));
  const DominationEstimate orig = estimate_domination(MeasurementFamily::validate({base}), opts, Rng(11));
  CHECK(sym.lambda_upper >= orig.lambda_upper - 1e-9);
  // The average of many random conjugates discretises the uniform POVM,
  // whose lambda in d = 2 is 1/2.
  CHECK(sym.lambda_upper <= 0.5 + 1e-12);
  CHECK(sym.lambda_upper >= 0.5 - 0.03);
}
