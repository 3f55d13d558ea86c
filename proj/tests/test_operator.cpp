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

#include "distnorm/bipartite.hpp"
#include "support.hpp"

using namespace distnorm;
using namespace testing;

TEST_CASE("hermitian construction symmetrises and rejects") {
  Matrix m(2, 2);
  m << 1, cplx(0, 1e-13), cplx(0, 0), 2;
  const HermitianOp h(m);
  CHECK((h.matrix() - h.matrix().adjoint()).norm() == 0.0);
  m(0, 1) = 0.5;
  CHECK_THROWS_AS(HermitianOp{m}, Error);
  Matrix nan = Matrix::Zero(2, 2);
  nan(0, 0) = std::nan("");
  CHECK_THROWS_AS(HermitianOp{nan}, Error);
  CHECK_THROWS_AS(HermitianOp(Matrix::Identity(4, 4), Shape{3, 2}), Error);
}

TEST_CASE("trace norm examples") {
  CHECK(trace_norm(HermitianOp::diagonal({1, -1})) == doctest::Approx(2.0).epsilon(1e-14));
  Rng rng(1);
  for (int d : {2, 3, 5}) CHECK(trace_norm(random_density(d, rng)) == doctest::Approx(1.0).epsilon(1e-12));
  const HidingPair hp = hiding_pair(2);
  CHECK(trace_norm(0.5 * (hp.sym - hp.anti)) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("trace norm agrees with the singular-value sum") {
  Rng rng(2);
  for (int k = 0; k < 50; ++k) {
    const int d = 2 + k % 6;
    const HermitianOp h(hermitian_part(gaussian_matrix(d, rng)));
    CHECK(trace_norm(h) == doctest::Approx(svd_trace_norm(h.matrix())).epsilon(1e-10));
  }
}

TEST_CASE("norm ordering: trace >= hs >= trace / sqrt d") {
  Rng rng(3);
  for (int k = 0; k < 200; ++k) {
    const int d = 2 + k % 7;
    const HermitianOp h(hermitian_part(gaussian_matrix(d, rng)));
    const double t = trace_norm(h), f = hs_norm(h);
    CHECK(t >= f - 1e-12);
    CHECK(f >= t / std::sqrt(static_cast<double>(d)) - 1e-12);
  }
}

TEST_CASE("hilbert-schmidt examples") {
  CHECK(hs_inner(HermitianOp::identity(2), HermitianOp::identity(2)) == doctest::Approx(2.0));
  CHECK(hs_norm(HermitianOp::diagonal({1, -1})) == doctest::Approx(std::sqrt(2.0)));
  const HermitianOp f = swap_operator(2);
  const HermitianOp psym = 0.5 * (HermitianOp::identity(4) + f);
  CHECK(hs_inner(psym, f) == doctest::Approx(3.0).epsilon(1e-14));
  CHECK_THROWS_AS(hs_inner(HermitianOp::identity(2), HermitianOp::identity(3)), Error);
}

TEST_CASE("swap operator squares to identity with trace d") {
  for (int d : {2, 3, 4}) {
    const HermitianOp f = swap_operator(d);
    CHECK((f.matrix() * f.matrix() - Matrix::Identity(d * d, d * d)).norm() < 1e-14);
    CHECK(f.trace() == doctest::Approx(d));
  }
}

TEST_CASE("partial trace examples") {
  // Maximally entangled projector on 2 x 2.
  Vector phi = Vector::Zero(4);
  phi(0) = phi(3) = 1.0 / std::sqrt(2.0);
  const HermitianOp pp(phi * phi.adjoint(), Shape{2, 2});
  CHECK((partial_trace(pp, Party::B).matrix() - 0.5 * Matrix::Identity(2, 2)).norm() < 1e-14);

  Rng rng(4);
  for (int k = 0; k < 20; ++k) {
    const Matrix x = hermitian_part(gaussian_matrix(2, rng));
    const Matrix y = hermitian_part(gaussian_matrix(3, rng));
    const HermitianOp xy(kron(x, y), Shape{2, 3});
    CHECK((partial_trace(xy, Party::B).matrix() - x * y.trace()).norm() < 1e-12);
    CHECK((partial_trace(xy, Party::A).matrix() - y * x.trace()).norm() < 1e-12);
    CHECK(partial_trace(xy, Party::A).trace() == doctest::Approx(xy.trace()));
  }
  const HermitianOp zz = tensor_product(HermitianOp::diagonal({1, -1}), HermitianOp::diagonal({1, 0, -1}));
  CHECK(partial_trace(zz, Party::A).matrix().norm() < 1e-15);
  CHECK_THROWS_AS(partial_trace(HermitianOp::identity(4), Party::A), Error);
}

TEST_CASE("partial trace of a product with a unit-trace factor") {
  Rng rng(5);
  for (int k = 0; k < 20; ++k) {
    const HermitianOp a(hermitian_part(gaussian_matrix(3, rng)));
    const HermitianOp rho = random_density(2, rng);
    CHECK((partial_trace(tensor_product(a, rho), Party::B).matrix() - a.matrix()).norm() < 1e-12);
  }
}

TEST_CASE("partial transpose") {
  const HermitianOp f = swap_operator(2);
  const Spectrum s = spectrum(partial_transpose(f));
  CHECK(s.eigenvalues[0] == doctest::Approx(2.0));
  for (int i = 1; i < 4; ++i) CHECK(std::abs(s.eigenvalues[static_cast<std::size_t>(i)]) < 1e-14);

  Rng rng(6);
  for (int k = 0; k < 100; ++k) {
    const HermitianOp xi = random_traceless(6, rng, Shape{2, 3});
    const HermitianOp pt = partial_transpose(xi);
    CHECK(hs_norm(pt) == doctest::Approx(hs_norm(xi)).epsilon(1e-12));
    CHECK(pt.trace() == doctest::Approx(xi.trace()).epsilon(1e-12));
    CHECK((partial_transpose(pt).matrix() - xi.matrix()).norm() < 1e-14);
  }
  const Matrix a = hermitian_part(gaussian_matrix(2, rng));
  const Matrix b = hermitian_part(gaussian_matrix(3, rng));
  const HermitianOp ab(kron(a, b), Shape{2, 3});
  CHECK((partial_transpose(ab).matrix() - kron(a, b.transpose())).norm() < 1e-13);
  CHECK_THROWS_AS(partial_transpose(HermitianOp::identity(4)), Error);
}

TEST_CASE("tensor product") {
  CHECK((tensor_product(HermitianOp::identity(2), HermitianOp::identity(2)).matrix() - Matrix::Identity(4, 4))
            .norm() == 0.0);
  const HermitianOp zz = tensor_product(HermitianOp::diagonal({1, -1}), HermitianOp::diagonal({1, -1}));
  CHECK((zz.matrix() - HermitianOp::diagonal({1, -1, -1, 1}).matrix()).norm() == 0.0);
  REQUIRE(zz.shape());
  CHECK(*zz.shape() == Shape{2, 2});
  Rng rng(7);
  for (int k = 0; k < 20; ++k) {
    const HermitianOp a(hermitian_part(gaussian_matrix(3, rng))), b(hermitian_part(gaussian_matrix(2, rng)));
    CHECK(tensor_product(a, b).trace() == doctest::Approx(a.trace() * b.trace()).epsilon(1e-12));
  }
  CHECK_THROWS_AS(tensor_product(HermitianOp::identity(100), HermitianOp::identity(100)), Error);
}

TEST_CASE("spectral reconstruction") {
  Rng rng(8);
  for (int k = 0; k < 30; ++k) {
    const HermitianOp h(hermitian_part(gaussian_matrix(2 + k % 5, rng)));
    const Eigensystem es = eigensystem(h);
    const Matrix rebuilt = es.vectors * es.values.cast<cplx>().asDiagonal() * es.vectors.adjoint();
    CHECK((rebuilt - h.matrix()).norm() < 1e-9);
    for (Eigen::Index i = 1; i < es.values.size(); ++i) CHECK(es.values(i) >= es.values(i - 1));
    const Spectrum s = spectrum(h);
    double sum = 0.0;
    for (std::size_t i = 0; i < s.eigenvalues.size(); ++i) {
      sum += s.eigenvalues[i];
      if (i) CHECK(s.eigenvalues[i] <= s.eigenvalues[i - 1]);
    }
    CHECK(sum == doctest::Approx(h.trace()).epsilon(1e-9));
  }
}

TEST_CASE("haar states: unit norm, mean I/d, fourth moment 1/3") {
  Rng rng(9);
  const int n = 100000;
  std::vector<double> p00, p11, re01, im01, q4;
  p00.reserve(n);
  for (int k = 0; k < n; ++k) {
    const PureState s = haar_state(2, rng);
    CHECK_MESSAGE(std::abs(s.amplitudes().norm() - 1.0) <= 1e-12, "sample ", k);
    const cplx a = s.amplitudes()(0), b = s.amplitudes()(1);
    p00.push_back(std::norm(a));
    p11.push_back(std::norm(b));
    re01.push_back((a * std::conj(b)).real());
    im01.push_back((a * std::conj(b)).imag());
    q4.push_back(std::norm(a) * std::norm(a));
  }
  const auto check_mean = [](const std::vector<double>& xs, double expect) {
    const Stats st = stats(xs);
    CHECK(std::abs(st.mean - expect) <= 5 * st.se);
  };
  check_mean(p00, 0.5);
  check_mean(p11, 0.5);
  check_mean(re01, 0.0);
  check_mean(im01, 0.0);
  check_mean(q4, 1.0 / 3.0);
  CHECK_THROWS_AS(haar_state(0, rng), Error);
}

TEST_CASE("haar unitaries are unitary") {
  Rng rng(10);
  for (int d : {1, 2, 5, 9}) CHECK(is_unitary(haar_unitary(d, rng)));
}

TEST_CASE("random traceless directions") {
  Rng rng(11);
  for (int k = 0; k < 200; ++k) {
    const int d = 2 + k % 6;
    const HermitianOp xi = random_traceless_direction(d, rng);
    CHECK(std::abs(xi.trace()) <= 1e-12);
    CHECK(std::abs(trace_norm(xi) - 1.0) <= 1e-10);
  }
  // Split (1, d-1): one positive eigenvalue 1/2, the rest flat at -1/(2(d-1)).
  const HermitianOp xi = random_traceless_direction(4, 1, rng);
  const Spectrum s = spectrum(xi);
  CHECK(s.eigenvalues[0] == doctest::Approx(0.5));
  const HermitianOp flat = split_direction(haar_unitary(4, rng), 1);
  const Spectrum fs = spectrum(flat);
  for (int i = 1; i < 4; ++i) CHECK(fs.eigenvalues[static_cast<std::size_t>(i)] == doctest::Approx(-1.0 / 6.0));
  for (int k = 0; k < 50; ++k) {
    const HermitianOp g = random_traceless(6, rng, Shape{3, 2});
    CHECK(std::abs(g.trace()) <= 1e-12);
    CHECK(std::abs(trace_norm(g) - 1.0) <= 1e-10);
  }
  // The only traceless 1 x 1 operator is zero, which has no direction.
  CHECK_THROWS_AS(random_traceless(1, rng), Error);
}

TEST_CASE("helstrom examples") {
  const HermitianOp z0 = PureState::basis(2, 0).projector(), z1 = PureState::basis(2, 1).projector();
  CHECK(helstrom_bias(z0, z1).bias == doctest::Approx(1.0));
  CHECK(helstrom_bias(z0, z0).bias == doctest::Approx(0.0));
  Vector v(2);
  v << 1.0 / std::sqrt(3.0), std::sqrt(2.0 / 3.0);
  const HermitianOp p = PureState(v).projector();
  const HelstromResult r = helstrom_bias(z0, p);
  CHECK(r.bias == doctest::Approx(std::sqrt(2.0 / 3.0)).epsilon(1e-12));
  // The returned projector achieves the bias: tr(P (rho - sigma)) = bias.
  CHECK(hs_inner(r.projector, z0 - p) == doctest::Approx(r.bias).epsilon(1e-12));
  CHECK_THROWS_AS(helstrom_bias(HermitianOp::diagonal({1, -1}), z0), Error);
}
