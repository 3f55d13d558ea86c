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

#include <map>

#include "distnorm/designs.hpp"
#include "support.hpp"

using namespace distnorm;
using namespace testing;

namespace {

double binom(int n, int k) {
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

// Frame potential route: defect^2 = sum_jk p_j p_k |<j|k>|^{2t} - 1/C(d+t-1, t).
double frame_potential_defect_sq(const WeightedDesign& w, int t) {
  double fp = 0.0;
  for (const auto& a : w.items())
    for (const auto& b : w.items())
      fp += a.weight * b.weight * std::pow(std::norm(a.vector.amplitudes().dot(b.vector.amplitudes())), t);
  return fp - 1.0 / binom(w.dim() + t - 1, t);
}

// Convex mixture of the qubit MUB design (weight alpha) and a rotated
// tetrahedron, so that no vector appears twice.
WeightedDesign qubit_mixture(double alpha) {
  std::vector<DesignItem> items;
  const WeightedDesign mub = mub_design(2);
  for (const auto& it : mub.items()) items.push_back({alpha * it.weight, it.vector});
  Rng rng(123);
  const Matrix u = haar_unitary(2, rng);
  for (const auto& v : qubit_tetrahedron()) items.push_back({(1.0 - alpha) / 4.0, PureState::normalized(u * v.amplitudes())});
  return WeightedDesign::validate(std::move(items), 2);
}

std::pair<HermitianOp, HermitianOp> orthogonal_pair(int d, Rng& rng) {
  const Matrix u = haar_unitary(d, rng);
  return {PureState(u.col(0)).projector(), PureState(u.col(1)).projector()};
}

}  // namespace

TEST_CASE("mub bases: unbiasedness and orthonormality") {
  for (int d : {2, 3, 5, 7, 11}) {
    const auto bases = mub_bases(d);
    REQUIRE(bases.size() == static_cast<std::size_t>(d + 1));
    double worst = 0.0;
    for (std::size_t b = 0; b < bases.size(); ++b) {
      worst = std::max(worst, (bases[b].adjoint() * bases[b] - Matrix::Identity(d, d)).cwiseAbs().maxCoeff());
      for (std::size_t c = b + 1; c < bases.size(); ++c) {
        const Matrix ov = bases[b].adjoint() * bases[c];
        for (int i = 0; i < d; ++i)
          for (int j = 0; j < d; ++j) worst = std::max(worst, std::abs(std::norm(ov(i, j)) - 1.0 / d));
      }
    }
    CHECK_MESSAGE(worst <= 1e-12, d);
    const WeightedDesign w = mub_design(d);
    CHECK(w.size() == static_cast<std::size_t>(d * (d + 1)));
    CHECK(w.proper());
    CHECK(w.order() == 2);
  }
  CHECK_THROWS_AS(mub_design(4), Error);
  try {
    mub_design(6);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::Unsupported);
  }
  CHECK(is_prime(2));
  CHECK(is_prime(11));
  CHECK_FALSE(is_prime(1));
  CHECK_FALSE(is_prime(9));
}

TEST_CASE("design defect: examples") {
  CHECK(design_defect(mub_design(2), 2) <= 1e-12);
  CHECK(design_defect(mub_design(2), 4) > 0.01);
  for (int d : {3, 5, 7, 11}) CHECK(design_defect(mub_design(d), 2) <= 1e-9);
  // A single projector is not a 1-design, so it cannot form a design at all.
  CHECK_THROWS_WITH_AS(WeightedDesign::validate({{1.0, PureState::basis(2, 0)}}, 1),
                       doctest::Contains("not a 1-design"), Error);
  CHECK_THROWS_AS(WeightedDesign::validate({{0.5, PureState::basis(2, 0)}, {0.4, PureState::basis(2, 1)}}, 1),
                  Error);
  CHECK_THROWS_AS(WeightedDesign::validate({{1.5, PureState::basis(2, 0)}, {-0.5, PureState::basis(2, 1)}}, 1),
                  Error);
  // 64^2 = 4096 is the cap; 65^2 exceeds it.
  const WeightedDesign comp = uniform_design([] {
    std::vector<PureState> v;
    for (int k = 0; k < 65; ++k) v.push_back(PureState::basis(65, k));
    return v;
  }(), 1);
  CHECK_THROWS_AS(design_defect(comp, 2), Error);
}

TEST_CASE("design defect agrees with the frame potential") {
  for (int d : {2, 3, 5}) {
    const WeightedDesign w = mub_design(d);
    for (int t = 1; t <= (d == 2 ? 5 : 3); ++t)
      CHECK(std::abs(std::pow(design_defect(w, t), 2) - frame_potential_defect_sq(w, t)) <= 1e-12);
  }
  const WeightedDesign sic = uniform_design(qubit_tetrahedron(), 2);
  for (int t = 1; t <= 4; ++t)
    CHECK(std::abs(std::pow(design_defect(sic, t), 2) - frame_potential_defect_sq(sic, t)) <= 1e-12);
  CHECK(design_defect(sic, 3) > 0.01);
  // A random orthonormal basis is a 1-design only.
  Rng rng(11);
  const Matrix u = haar_unitary(3, rng);
  std::vector<PureState> basis;
  for (int k = 0; k < 3; ++k) basis.emplace_back(u.col(k));
  const WeightedDesign b = uniform_design(basis, 1);
  CHECK(design_defect(b, 1) <= 1e-12);
  CHECK(std::pow(design_defect(b, 2), 2) == doctest::Approx(frame_potential_defect_sq(b, 2)).epsilon(1e-9));
  CHECK(design_defect(b, 2) > 0.1);
}

TEST_CASE("sic validation") {
  const auto tet = qubit_tetrahedron();
  const SicReport good = sic_validate(tet);
  CHECK(good.passed);
  CHECK(good.max_overlap_deviation <= 1e-12);
  CHECK(good.defect <= 1e-12);
  for (std::size_t i = 0; i < tet.size(); ++i)
    for (std::size_t j = i + 1; j < tet.size(); ++j)
      CHECK(std::norm(tet[i].amplitudes().dot(tet[j].amplitudes())) == doctest::Approx(1.0 / 3.0).epsilon(1e-12));

  std::vector<PureState> doubled;
  for (int c = 0; c < 2; ++c)
    for (int k = 0; k < 2; ++k) doubled.push_back(PureState::basis(2, k));
  const SicReport bad = sic_validate(doubled);
  CHECK_FALSE(bad.passed);
  CHECK(bad.max_overlap_deviation == doctest::Approx(2.0 / 3.0));

  Rng rng(5);
  std::vector<PureState> noisy;
  for (const auto& v : tet) {
    Vector a = v.amplitudes();
    for (int i = 0; i < 2; ++i) a(i) += 1e-3 * cplx(rng.normal(), rng.normal()) / std::sqrt(2.0);
    noisy.push_back(PureState::normalized(a));
  }
  const SicReport pert = sic_validate(noisy);
  CHECK_FALSE(pert.passed);
  CHECK(pert.max_overlap_deviation > 1e-4);
  CHECK(pert.max_overlap_deviation < 1e-2);

  CHECK_THROWS_AS(sic_validate({PureState::basis(2, 0), PureState::basis(2, 1)}), Error);
}

TEST_CASE("design povm effects") {
  const Povm mub = design_povm(mub_design(2));
  CHECK(mub.size() == 6);
  CHECK(mub.completeness_residual() <= 1e-10);
  const auto items = mub_design(2).items();
  for (std::size_t k = 0; k < 6; ++k)
    CHECK((mub[k].matrix() - items[k].vector.projector().matrix() / 3.0).norm() <= 1e-14);
  const auto tet = qubit_tetrahedron();
  const Povm sic = design_povm(uniform_design(tet, 2));
  CHECK(sic.size() == 4);
  CHECK(sic.completeness_residual() <= 1e-10);
  for (std::size_t k = 0; k < 4; ++k) CHECK((sic[k].matrix() - tet[k].projector().matrix() / 2.0).norm() <= 1e-14);
}

TEST_CASE("two-design bound: same-basis witness and random audits") {
  for (int d : {2, 3, 5, 7, 11}) CHECK(std::abs(mub_same_basis_distance(d) - 2.0 / (d + 1)) <= 1e-12);

  const TwoDesignAudit a3 = two_design_bound_check(mub_design(3), 10000, Rng(3));
  CHECK(a3.violations == 0);
  CHECK(a3.min_distance >= 0.25 - 1e-9);
  CHECK(a3.bound == doctest::Approx(0.25));
  CHECK(a3.trials == 10000);
  // The reported witness reproduces the reported minimum.
  CHECK(bias(design_povm(mub_design(3)), a3.witness_rho, a3.witness_sigma) * 2.0 ==
        doctest::Approx(a3.min_distance).epsilon(1e-12));

  for (int d : {2, 5, 7, 11}) {
    const TwoDesignAudit a = two_design_bound_check(mub_design(d), 2000, Rng(d));
    CHECK_MESSAGE(a.violations == 0, d);
    CHECK(a.min_distance >= 1.0 / (d + 1) - 1e-9);
  }

  const auto tet = qubit_tetrahedron();
  const Povm sic = design_povm(uniform_design(tet, 2));
  CHECK(2.0 * bias(sic, tet[0].projector(), tet[1].projector()) == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
  const TwoDesignAudit as = two_design_bound_check(uniform_design(tet, 2), 2000, Rng(9));
  CHECK(as.violations == 0);

  CHECK_THROWS_AS(two_design_bound_check(mub_design(2), 0, Rng(1)), Error);
  std::vector<PureState> basis{PureState::basis(2, 0), PureState::basis(2, 1)};
  CHECK_THROWS_AS(two_design_bound_check(uniform_design(basis, 1), 10, Rng(1)), Error);
}

TEST_CASE("sic tightness reports both trace distances") {
  const SicTightness t = sic_tightness(uniform_design(qubit_tetrahedron(), 2));
  CHECK(t.dim == 2);
  CHECK(t.measured_distance == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
  CHECK(t.trace_distance == doctest::Approx(2.0 * std::sqrt(2.0 / 3.0)).epsilon(1e-12));
  CHECK(t.quoted_trace_distance == doctest::Approx(4.0 / 3.0).epsilon(1e-12));
  CHECK(t.lambda_upper == doctest::Approx(1.0 / std::sqrt(6.0)).epsilon(1e-12));
  CHECK(t.quoted_lambda_upper == doctest::Approx(0.5).epsilon(1e-12));
  // Independent trace distance of two pure states with overlap 1/3.
  const auto tet = qubit_tetrahedron();
  CHECK(svd_trace_norm(tet[0].projector().matrix() - tet[1].projector().matrix()) ==
        doctest::Approx(t.trace_distance).epsilon(1e-12));
}

TEST_CASE("refinement: weight bookkeeping") {
  const WeightedDesign mix = qubit_mixture(2.0 / 3.0);
  CHECK_FALSE(mix.proper());
  CHECK(design_defect(mix, 2) <= 1e-12);
  for (int n : {10, 20, 36, 97}) {
    const WeightedDesign r = refine_weighted_design(mix, n);
    CHECK(r.size() <= static_cast<std::size_t>(n) + mix.size());
    double total = 0.0;
    std::map<std::size_t, double> per;
    for (const auto& it : r.items()) {
      CHECK(it.weight <= 1.0 / n + 1e-15);
      total += it.weight;
      for (std::size_t k = 0; k < mix.size(); ++k)
        if ((it.vector.amplitudes() - mix.items()[k].vector.amplitudes()).norm() < 1e-14) per[k] += it.weight;
    }
    CHECK(total == doctest::Approx(1.0).epsilon(1e-14));
    for (std::size_t k = 0; k < mix.size(); ++k) CHECK(per[k] == doctest::Approx(mix.items()[k].weight).epsilon(1e-14));
    CHECK(std::abs(design_defect(r, 2) - design_defect(mix, 2)) <= 1e-12);
  }
  // N = 36: 36/9 = 4 and 36/12 = 3 copies, no remainders.
  CHECK(refine_weighted_design(mix, 36).size() == 6 * 4 + 4 * 3);
  CHECK(refine_weighted_design(mix, 36).proper());
  // N = 20: 20/9 gives 2 copies and 1/90; 20/12 gives 1 copy and 1/30.
  const WeightedDesign r20 = refine_weighted_design(mix, 20);
  CHECK(r20.size() == 6 * 3 + 4 * 2);
  int small_mub = 0, small_sic = 0;
  for (const auto& it : r20.items()) {
    if (std::abs(it.weight - 1.0 / 90.0) < 1e-15) ++small_mub;
    if (std::abs(it.weight - 1.0 / 30.0) < 1e-15) ++small_sic;
  }
  CHECK(small_mub == 6);
  CHECK(small_sic == 4);
  CHECK_THROWS_AS(refine_weighted_design(mix, 9), Error);
  // Basis weights (0.7, 0.3) split evenly over their two vectors; at N = 20
  // each vector divides exactly into 7 or 3 copies with no remainder.
  std::vector<DesignItem> two_bases;
  for (int k = 0; k < 2; ++k) two_bases.push_back({0.35, PureState::basis(2, k)});
  for (const Vector& v : {Vector(Vector::Constant(2, 1.0)), Vector((Vector(2) << 1.0, -1.0).finished())})
    two_bases.push_back({0.15, PureState::normalized(v)});
  const WeightedDesign r10 = refine_weighted_design(WeightedDesign::validate(two_bases, 1), 20);
  CHECK(r10.size() == 20);
  CHECK(r10.proper());
  // Proper input is only split.
  const WeightedDesign m3 = refine_weighted_design(mub_design(2), 6);
  CHECK(m3.size() == 6);
  CHECK(std::abs(design_defect(m3, 2) - design_defect(mub_design(2), 2)) <= 1e-12);
}

TEST_CASE("weighted chain: distance >= inner bound >= uniformised bound") {
  Rng rng(21);
  for (double alpha : {0.2, 2.0 / 3.0, 0.9}) {
    const WeightedDesign mix = qubit_mixture(alpha);
    for (int n : {10, 17, 40, 200}) {
      for (int k = 0; k < 20; ++k) {
        const auto [rho, sigma] = orthogonal_pair(2, rng);
        const WeightedChain c = weighted_two_design_chain(mix, n, rho, sigma);
        CHECK(c.distance >= c.l1_inner_bound - 1e-12);
        CHECK(c.l1_inner_bound >= c.uniformised_bound - 1e-12);
        CHECK(c.uniformised_bound == doctest::Approx(1.0 - 2.0 / 3.0 * (1.0 + 10.0 / n)));
        CHECK(c.distance == doctest::Approx(2.0 * bias(design_povm(mix), rho, sigma)).epsilon(1e-12));
      }
    }
  }
  // Large N approaches the proper-design value 1/(d+1).
  const WeightedChain far = weighted_two_design_chain(qubit_mixture(0.5), 100000, PureState::basis(2, 0).projector(),
                                                      PureState::basis(2, 1).projector());
  CHECK(far.uniformised_bound == doctest::Approx(1.0 / 3.0).epsilon(1e-3));
  CHECK_THROWS_AS(weighted_two_design_chain(qubit_mixture(0.5), 20, PureState::basis(2, 0).projector(),
                                            PureState::basis(2, 0).projector()),
                  Error);
}

TEST_CASE("design moments: examples") {
  const HermitianOp xi = HermitianOp::diagonal({0.5, -0.5});
  const MomentReport m = design_moments(mub_design(2), xi, true);
  CHECK(m.second_moment == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
  CHECK(m.closed_form_second == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
  REQUIRE(m.fourth_moment.has_value());
  REQUIRE(m.berger_bound.has_value());
  // Six-term sums: only the Z basis contributes, S = +-1 with weight 1/3.
  CHECK(*m.fourth_moment == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
  CHECK(m.mean_abs == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
  CHECK(*m.berger_bound == doctest::Approx(std::pow(1.0 / 3.0, 1.5) / std::sqrt(1.0 / 3.0)));
  CHECK(*m.berger_bound <= m.mean_abs + 1e-12);
  CHECK(*m.closed_form_fourth == doctest::Approx(0.2).epsilon(1e-14));
  CHECK_FALSE(m.second_se.has_value());

  const MomentReport z = design_moments(mub_design(3), HermitianOp::zero(3), true);
  CHECK(z.second_moment == 0.0);
  CHECK(*z.fourth_moment == 0.0);
  CHECK(z.mean_abs == 0.0);
  CHECK_FALSE(design_moments(mub_design(2), xi, false).fourth_moment.has_value());
  CHECK_THROWS_AS(design_moments(mub_design(2), HermitianOp::diagonal({1.0, 0.0}), false), Error);
  CHECK_THROWS_AS(design_moments(mub_design(3), xi, false), Error);
}

TEST_CASE("uniform moments by monte carlo") {
  const HermitianOp xi = HermitianOp::diagonal({0.5, -0.5});
  const MomentReport u = uniform_moment_report(xi, 100000, Rng(8));
  REQUIRE(u.fourth_moment.has_value());
  REQUIRE(u.fourth_se.has_value());
  CHECK(std::abs(*u.fourth_moment - 0.2) <= 5 * *u.fourth_se);
  CHECK(std::abs(u.second_moment - 1.0 / 3.0) <= 5 * *u.second_se);
  CHECK(std::abs(u.mean_abs - 0.5) <= 5 * *u.mean_abs_se);
  CHECK(*u.closed_form_berger == doctest::Approx(0.4303).epsilon(1e-3));
  CHECK(*u.berger_bound <= u.mean_abs + 3 * *u.mean_abs_se);
  CHECK(u.samples == 100000);

  Rng rng(31);
  for (int d : {3, 4, 6}) {
    const HermitianOp x = random_traceless_direction(d, rng);
    const MomentReport r = uniform_moment_report(x, 50000, Rng(d));
    CHECK(std::abs(r.second_moment - second_moment_closed_form(x)) <= 5 * *r.second_se);
    CHECK(std::abs(*r.fourth_moment - fourth_moment_closed_form(x)) <= 5 * *r.fourth_se);
    CHECK(*r.berger_bound <= r.mean_abs + 3 * *r.mean_abs_se);
  }
}

TEST_CASE("two-designs reproduce the second moment on random traceless directions") {
  Rng rng(77);
  std::vector<WeightedDesign> designs{mub_design(2), mub_design(3), mub_design(5), mub_design(7),
                                      uniform_design(qubit_tetrahedron(), 2), qubit_mixture(0.3)};
  for (const auto& w : designs)
    for (int k = 0; k < 100; ++k) {
      const HermitianOp x = random_traceless(w.dim(), rng);
      const MomentReport m = design_moments(w, x, true);
      CHECK(std::abs(m.second_moment - m.closed_form_second) <= 1e-9);
      CHECK(*m.berger_bound <= m.mean_abs + 1e-12);
    }
}

TEST_CASE("four-design bias bound") {
  CHECK(four_design_bias_bound(HermitianOp::diagonal({std::sqrt(0.5), -std::sqrt(0.5)}), 2).l2_bound ==
        doctest::Approx(1.0 / 3.0));
  const FourDesignBound b = four_design_bias_bound(HermitianOp::diagonal({0.5, -0.5}), 2);
  CHECK(b.l2_bound == doctest::Approx(0.2357).epsilon(1e-4));
  CHECK(b.l1_bound == doctest::Approx(1.0 / (3.0 * std::sqrt(2.0))));
  CHECK(b.l2_bound <= 0.5);
  const FourDesignBound z = four_design_bias_bound(HermitianOp::zero(3), 3);
  CHECK(z.l1_bound == 0.0);
  CHECK(z.l2_bound == 0.0);
  Rng rng(4);
  for (int k = 0; k < 50; ++k) {
    const int d = 2 + k % 5;
    const FourDesignBound r = four_design_bias_bound(random_traceless(d, rng), d);
    CHECK(r.l1_bound <= r.l2_bound + 1e-14);
  }
}
