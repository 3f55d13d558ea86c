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

#include "distnorm/reports.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "distnorm/perm.hpp"
#include "distnorm/uniform.hpp"

namespace distnorm::reports {

namespace {

using json = io::json;

constexpr double kSe = 5.0;  // Monte-Carlo slack in standard errors

void check_tags(const RunTags& tags) {
  if (!(tags.tol >= tol::floor)) {
    std::ostringstream os;
    os << "tolerance " << tags.tol << " is below the floor " << tol::floor;
    throw Error(ErrorCode::Argument, os.str());
  }
}

void require_samples(const RunTags& tags) {
  if (tags.samples < kMinSamples) {
    std::ostringstream os;
    os << "need at least " << kMinSamples << " samples, got " << tags.samples;
    throw Error(ErrorCode::Argument, os.str());
  }
}

Report finish(const char* command, json body, bool passed, const RunTags& tags) {
  body["command"] = command;
  body["seed"] = tags.seed;
  body["samples"] = tags.samples;
  body["tol"] = tags.tol;
  body["passed"] = passed;
  return {std::move(body), passed};
}

json shape_json(const std::optional<Shape>& s) {
  return s ? json::array({s->dA, s->dB}) : json(nullptr);
}

}  // namespace

HermitianOp rank_split_operator(int d, int a, int b) {
  if (a < 1 || b < 1) throw Error(ErrorCode::Argument, "rank split needs a, b >= 1");
  if (a + b > d) throw Error(ErrorCode::Argument, "rank split a + b exceeds d");
  std::vector<double> diag(static_cast<std::size_t>(d), 0.0);
  for (int i = 0; i < a; ++i) diag[static_cast<std::size_t>(i)] = 0.5 / a;
  for (int i = a; i < a + b; ++i) diag[static_cast<std::size_t>(i)] = -0.5 / b;
  return HermitianOp::diagonal(diag);
}

Report lambda_uniform(int d, const RunTags& tags) {
  check_tags(tags);
  const LambdaUniform lu = distnorm::lambda_uniform(d);
  json body;
  body["d"] = d;
  body["lambda"] = lu.value;
  body["argmin_split"] = json::array({lu.argmin.a, lu.argmin.b});
  body["lambda_times_sqrt_pi_d_over_2"] = lu.value * std::sqrt(std::numbers::pi * d / 2.0);
  bool passed = true;
  if (d % 2 == 0) {
    const double even = lambda_uniform_even_form(d);
    body["even_form"] = even;
    body["even_form_deviation"] = std::abs(even - lu.value);
    passed = std::abs(even - lu.value) <= tags.tol;
  }
  return finish("lambda-uniform", std::move(body), passed, tags);
}

Report mc_bias(const HermitianOp& xi, std::optional<RankSplit> split, const RunTags& tags) {
  check_tags(tags);
  require_samples(tags);
  const McEstimate est = mc_uniform_bias(xi, tags.samples, Rng(tags.seed));
  json body;
  body["dim"] = xi.dim();
  body["trace_norm"] = trace_norm(xi);
  body["estimate"] = est.mean;
  body["std_error"] = est.std_error;
  bool passed = true;
  if (split) {
    const double closed = split_bias_closed_form(*split);
    body["split"] = json::array({split->a, split->b});
    body["closed_form"] = closed;
    body["deviation"] = std::abs(est.mean - closed);
    passed = std::abs(est.mean - closed) <= kSe * est.std_error + tags.tol;
  }
  return finish("mc-bias", std::move(body), passed, tags);
}

Report mub(int d, const RunTags& tags) {
  check_tags(tags);
  const WeightedDesign design = mub_design(d);
  const double defect = design_defect(design, 2);
  const double dist = mub_same_basis_distance(d);
  const double expected = 2.0 / (d + 1.0);
  json body;
  body["d"] = d;
  body["bases"] = d + 1;
  body["size"] = design.size();
  body["defect_t2"] = defect;
  body["same_basis_distance"] = dist;
  body["expected_distance"] = expected;
  const bool passed = defect <= tags.tol && std::abs(dist - expected) <= tags.tol;
  return finish("mub", std::move(body), passed, tags);
}

Report design_check(const WeightedDesign& design, int t, const RunTags& tags) {
  check_tags(tags);
  const double defect = design_defect(design, t);
  json body;
  body["dim"] = design.dim();
  body["size"] = design.size();
  body["declared_t"] = design.order();
  body["t"] = t;
  body["proper"] = design.proper();
  body["defect"] = defect;
  bool passed = defect <= tags.tol;
  const int d = design.dim();
  if (t == 2 && design.proper() && design.size() == static_cast<std::size_t>(d) * static_cast<std::size_t>(d)) {
    std::vector<PureState> vectors;
    for (const auto& it : design.items()) vectors.push_back(it.vector);
    const SicReport sic = sic_validate(vectors);
    body["sic_max_overlap_deviation"] = sic.max_overlap_deviation;
    body["sic_passed"] = sic.passed;
    if (sic.passed) {
      const SicTightness st = sic_tightness(design);
      body["sic_measured_distance"] = st.measured_distance;
      body["sic_trace_distance"] = st.trace_distance;
      body["sic_quoted_trace_distance"] = st.quoted_trace_distance;
      body["sic_lambda_upper"] = st.lambda_upper;
      body["sic_quoted_lambda_upper"] = st.quoted_lambda_upper;
    }
  }
  return finish("design-check", std::move(body), passed, tags);
}

Report moments(const std::optional<WeightedDesign>& design, int d, int trials, const RunTags& tags) {
  check_tags(tags);
  if (trials < 1) throw Error(ErrorCode::Argument, "moments: trials must be positive");
  if (design) {
    d = design->dim();
    const double defect = design_defect(*design, 2);
    if (defect > 1e-6) {
      std::ostringstream os;
      os << "moments: not a 2-design, defect " << defect;
      throw Error(ErrorCode::Validation, os.str());
    }
  } else {
    require_samples(tags);
  }
  const Rng root(tags.seed);
  json records = json::array();
  bool passed = true;
  double worst_second = 0.0, worst_fourth_sum = 0.0;
  for (int k = 0; k < trials; ++k) {
    Rng r = root.split(static_cast<std::uint64_t>(k));
    const HermitianOp xi = random_traceless(d, r);
    json rec;
    rec["trial"] = k;
    if (design) {
      const MomentReport m = design_moments(*design, xi, false);
      const double dev = std::abs(m.second_moment - m.closed_form_second);
      worst_second = std::max(worst_second, dev);
      rec["second_moment"] = m.second_moment;
      rec["closed_form_second"] = m.closed_form_second;
      rec["deviation"] = dev;
      passed = passed && dev <= tags.tol;
    } else {
      const MomentReport m = uniform_moment_report(xi, tags.samples, r.split(1));
      const double dev = std::abs(m.second_moment - m.closed_form_second);
      const bool second_ok = dev <= kSe * m.second_se.value_or(0.0) + tags.tol;
      const bool berger_ok = *m.berger_bound <= m.mean_abs + 3.0 * m.mean_abs_se.value_or(0.0);
      rec["second_moment"] = m.second_moment;
      rec["second_se"] = *m.second_se;
      rec["closed_form_second"] = m.closed_form_second;
      rec["fourth_moment"] = *m.fourth_moment;
      rec["closed_form_fourth"] = *m.closed_form_fourth;
      rec["mean_abs"] = m.mean_abs;
      rec["mean_abs_se"] = *m.mean_abs_se;
      rec["berger_bound"] = *m.berger_bound;
      rec["closed_form_berger"] = *m.closed_form_berger;
      rec["berger_ok"] = berger_ok;
      passed = passed && second_ok && berger_ok;
    }
    if (d <= 16) {
      const FourthSum fs = single_party_fourth_sum(xi);
      const double dev = std::abs(fs.brute_force - fs.closed_form);
      worst_fourth_sum = std::max(worst_fourth_sum, dev);
      rec["fourth_sum"] = fs.brute_force;
      rec["fourth_sum_closed_form"] = fs.closed_form;
      passed = passed && dev <= tags.tol * std::max(1.0, std::abs(fs.closed_form));
    }
    records.push_back(std::move(rec));
  }
  json body;
  body["dim"] = d;
  body["source"] = design ? "design" : "uniform";
  body["trials"] = trials;
  if (design) body["max_second_deviation"] = worst_second;
  if (d <= 16) body["max_fourth_sum_deviation"] = worst_fourth_sum;
  body["records"] = std::move(records);
  return finish("moments", std::move(body), passed, tags);
}

Report two_design_audit(const WeightedDesign& design, const RunTags& tags) {
  check_tags(tags);
  if (tags.samples < 1) throw Error(ErrorCode::Argument, "two-design-audit: need at least one trial");
  const TwoDesignAudit a = two_design_bound_check(design, tags.samples, Rng(tags.seed));
  json body;
  body["dim"] = a.dim;
  body["trials"] = a.trials;
  body["bound"] = a.bound;
  body["min_distance"] = a.min_distance;
  body["violations"] = a.violations;
  return finish("two-design-audit", std::move(body), a.violations == 0, tags);
}

Report bipartite(const HermitianOp& xi, const RunTags& tags) {
  check_tags(tags);
  require_samples(tags);
  if (!xi.shape()) throw Error(ErrorCode::Validation, "bipartite: operator carries no shape");
  const SepBound sep = sep_l2_lower_bound(xi, 2);
  const SecondMoment sm = local_uniform_second_moment(xi);
  const double fourth_upper = local_uniform_fourth_moment_upper(xi);
  const LocalBiasBound lb = local_bias_lower_bound(xi);
  const auto mc = mc_local_uniform_moments(xi, tags.samples, Rng(tags.seed));
  const bool second_ok = std::abs(mc[1].mean - sm.value) <= kSe * mc[1].std_error + tags.tol;
  const bool fourth_ok = mc[2].mean <= fourth_upper + kSe * mc[2].std_error + tags.tol;
  const bool bias_ok = mc[0].mean >= lb.l2_bound - kSe * mc[0].std_error - tags.tol;
  json body;
  body["shape"] = shape_json(xi.shape());
  body["trace_norm"] = trace_norm(xi);
  body["hs_norm"] = hs_norm(xi);
  body["purity_t"] = sm.terms.t;
  body["purity_a"] = sm.terms.a;
  body["purity_b"] = sm.terms.b;
  body["sep_l2_bound"] = sep.l2_bound;
  body["sep_l1_bound"] = sep.l1_bound;
  body["second_moment"] = sm.value;
  body["mc_second_moment"] = mc[1].mean;
  body["mc_second_se"] = mc[1].std_error;
  body["fourth_moment_upper"] = fourth_upper;
  body["mc_fourth_moment"] = mc[2].mean;
  body["mc_fourth_se"] = mc[2].std_error;
  body["local_bias_l2_bound"] = lb.l2_bound;
  body["local_bias_l1_bound"] = lb.l1_bound;
  body["mc_local_bias"] = mc[0].mean;
  body["mc_local_bias_se"] = mc[0].std_error;
  body["second_moment_ok"] = second_ok;
  body["fourth_moment_ok"] = fourth_ok;
  body["local_bias_ok"] = bias_ok;
  return finish("bipartite-report", std::move(body), second_ok && fourth_ok && bias_ok, tags);
}

Report hiding(int d, const RunTags& tags) {
  check_tags(tags);
  const HermitianOp xi = hiding_direction(d);
  const PptValue ppt = ppt_norm_uu_invariant(UUInvariantOp::from_op(xi));
  const double bound = 2.0 / (d + 1.0);
  const SepBound sep = sep_l2_lower_bound(xi, 2);
  json body;
  body["d"] = d;
  body["ppt_bias"] = ppt.value;
  body["bound_2_over_d_plus_1"] = bound;
  body["global_bias"] = 0.5 * trace_norm(2.0 * xi);
  body["witness_x"] = ppt.x;
  body["witness_y"] = ppt.y;
  body["witness_min_ppt_eig"] = ppt.witness_min_ppt_eig;
  body["sep_l2_bound"] = sep.l2_bound;
  body["vertices"] = ppt.vertices.size();
  const bool passed = std::abs(ppt.value - bound) <= tags.tol && ppt.witness_min_ppt_eig >= -tags.tol;
  return finish("hiding", std::move(body), passed, tags);
}

Report perm_audit(Shape shape, int trials, const std::optional<HermitianOp>& xi, const RunTags& tags) {
  check_tags(tags);
  if (xi) {
    if (!xi->shape()) throw Error(ErrorCode::Validation, "perm-audit: operator carries no shape");
    shape = *xi->shape();
    trials = 1;
  }
  if (trials < 1) throw Error(ErrorCode::Argument, "perm-audit: trials must be positive");
  const auto& classes = r_conjugacy_classes();
  std::size_t members = 0;
  for (const auto& c : classes) members += c.members.size();

  const Rng root(tags.seed);
  int violations = 0, equality = 0, projector = 0, bounds = 0, aggregate = 0;
  double worst_spread = 0.0, max_imag = 0.0, max_proj_diff = 0.0;
  double min_margin = std::numeric_limits<double>::infinity();
  double min_aggregate_margin = std::numeric_limits<double>::infinity();
  json records = json::array();
  for (int k = 0; k < trials; ++k) {
    HermitianOp op;
    if (xi) {
      op = *xi;
    } else {
      Rng r = root.split(static_cast<std::uint64_t>(k));
      op = random_traceless(shape.dA * shape.dB, r, shape);
    }
    const PermAudit a = distnorm::perm_audit(op);
    violations += a.violations();
    equality += a.equality.violations;
    projector += a.projector.violations;
    bounds += a.bounds.violations;
    aggregate += a.aggregate.violations;
    worst_spread = std::max(worst_spread, a.equality.worst_spread);
    max_imag = std::max(max_imag, a.equality.max_imag);
    max_proj_diff = std::max(max_proj_diff, std::abs(a.projector.difference));
    min_aggregate_margin = std::min(min_aggregate_margin, a.aggregate.detailed_bound - a.aggregate.pair_sum);
    for (const auto& e : a.bounds.classes)
      if (e.bound) min_margin = std::min(min_margin, e.margin);
    if (xi) {
      for (const auto& e : a.bounds.classes) {
        json rec;
        rec["class_id"] = e.class_id;
        rec["representative"] = e.representative;
        rec["size"] = e.size;
        rec["cycle_types"] = e.cycle_types;
        rec["value"] = e.value;
        rec["bound"] = e.bound ? json(*e.bound) : json(nullptr);
        rec["margin"] = e.margin;
        rec["shared_fixed_point"] = e.shared_fixed_point;
        records.push_back(std::move(rec));
      }
    }
  }
  const auto [sum_a, expect_a] = symmetric_normalisation_check(shape.dA);
  const auto [sum_b, expect_b] = symmetric_normalisation_check(shape.dB);
  json body;
  body["shape"] = json::array({shape.dA, shape.dB});
  body["classes"] = classes.size();
  body["members"] = members;
  body["trials"] = trials;
  body["violations"] = violations;
  body["equality_violations"] = equality;
  body["projector_violations"] = projector;
  body["bound_violations"] = bounds;
  body["aggregate_violations"] = aggregate;
  body["worst_class_spread"] = worst_spread;
  body["max_imag"] = max_imag;
  body["max_projector_difference"] = max_proj_diff;
  body["min_class_margin"] = min_margin;
  body["min_aggregate_margin"] = min_aggregate_margin;
  body["normalisation_a"] = json::array({sum_a, expect_a});
  body["normalisation_b"] = json::array({sum_b, expect_b});
  bool passed = violations == 0 && classes.size() == 43 && members == 576 && sum_a == expect_a && sum_b == expect_b;
  if (shape.dA == 2 && shape.dB == 2) {
    Matrix x(2, 2);
    x << 0, 1, 1, 0;
    Matrix xx(4, 4);
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) xx.block(2 * i, 2 * j, 2, 2) = x(i, j) * x;
    const HermitianOp op(0.5 * xx, Shape{2, 2});
    const AggregateAudit agg = aggregate_diagram_bound_audit(op);
    body["xx_pair_sum"] = agg.pair_sum;
    body["xx_detailed_bound"] = agg.detailed_bound;
    passed = passed && std::abs(agg.pair_sum - 36.0) <= tags.tol && std::abs(agg.detailed_bound - 153.0) <= tags.tol &&
             agg.violations == 0;
  }
  if (xi) body["records"] = std::move(records);
  return finish("perm-audit", std::move(body), passed, tags);
}

Report certainty(int d, const std::optional<WeightedDesign>& design, const RunTags& tags) {
  check_tags(tags);
  if (tags.samples < 1) throw Error(ErrorCode::Argument, "certainty: need at least one state");
  if (!is_prime(d)) throw Error(ErrorCode::Unsupported, "certainty: d must be prime");
  const WeightedDesign dsg = design ? *design : mub_design(d);
  if (dsg.dim() != d) throw Error(ErrorCode::DimensionMismatch, "certainty: design dimension differs from d");

  const MubCertainty basis = mub_certainty_check(d, PureState::basis(d, 0));
  std::uint64_t mub_failures = basis.passed ? 0 : 1;
  std::uint64_t chain_failures = 0;
  double min_sum = basis.sum, max_sum = basis.sum;
  double min_gap = std::numeric_limits<double>::infinity();
  double min_pinsker_margin = std::numeric_limits<double>::infinity();
  bool constants_ordered = true;
  const Rng root(tags.seed);
  for (std::uint64_t k = 0; k < tags.samples; ++k) {
    Rng r = root.split(k);
    const PureState s = haar_state(d, r);
    const MubCertainty m = mub_certainty_check(d, s);
    if (!m.passed) ++mub_failures;
    min_sum = std::min(min_sum, m.sum);
    max_sum = std::max(max_sum, m.sum);
    const DesignCertainty c = design_certainty_check(dsg, s);
    if (!c.chain_holds) ++chain_failures;
    constants_ordered = c.constants_ordered;
    min_gap = std::min(min_gap, c.renyi_gap);
    min_pinsker_margin = std::min(min_pinsker_margin, c.pinsker_term - std::max(c.dimension_bound, c.final_bound));
  }
  const double dd = d;
  json body;
  body["d"] = d;
  body["states"] = tags.samples;
  body["basis_state_sum"] = basis.sum;
  body["min_sum"] = min_sum;
  body["max_sum"] = max_sum;
  body["lower"] = basis.lower;
  body["upper"] = basis.upper;
  body["mub_failures"] = mub_failures;
  body["chain_failures"] = chain_failures;
  body["min_renyi_gap"] = min_gap;
  body["min_pinsker_margin"] = min_pinsker_margin;
  body["dimension_bound"] = (dd - 1.0) / (4.0 * std::numbers::ln2 * dd * (dd + 1.0) * (dd + 1.0));
  body["final_bound"] = 1.0 / (6.0 * std::numbers::ln2 * (dd + 1.0) * (dd + 1.0));
  body["constants_ordered"] = constants_ordered;
  return finish("certainty", std::move(body), mub_failures == 0 && chain_failures == 0, tags);
}

Report l1_sweep(int n, std::uint64_t quantum_trials, const RunTags& tags) {
  check_tags(tags);
  if (n < 2) throw Error(ErrorCode::Argument, "l1-sweep: n must be at least 2");
  if (tags.samples < 1) throw Error(ErrorCode::Argument, "l1-sweep: need at least one classical pair");
  const Rng root(tags.seed);
  double min_l1 = std::numeric_limits<double>::infinity();
  double min_fid = min_l1, min_pinsker = min_l1, min_quantum = min_l1;
  std::uint64_t infinite = 0;
  auto draw = [n](Rng& r, bool sparse) {
    std::vector<double> p(static_cast<std::size_t>(n));
    double s = 0.0;
    for (double& x : p) {
      x = sparse && r.uniform() < 0.3 ? 0.0 : -std::log(1.0 - r.uniform());
      s += x;
    }
    if (s == 0.0) {
      p[0] = 1.0;
      s = 1.0;
    }
    for (double& x : p) x /= s;
    return p;
  };
  for (std::uint64_t k = 0; k < tags.samples; ++k) {
    Rng r = root.split(k);
    const bool sparse = k % 2 == 1;
    const auto p = draw(r, sparse), q = draw(r, sparse);
    min_l1 = std::min(min_l1, l1_inner_gap(p, q));
    min_fid = std::min(min_fid, fidelity_step_gap(p, q));
    const PinskerGap pg = pinsker_gap(p, q);
    if (std::isinf(pg.divergence)) ++infinite;
    else min_pinsker = std::min(min_pinsker, pg.gap);
  }
  const Rng qroot = root.split(0x71756e74ULL);
  for (std::uint64_t k = 0; k < quantum_trials; ++k) {
    Rng r = qroot.split(k);
    const HermitianOp rho = k % 2 == 0 ? haar_state(n, r).projector() : random_density(n, r);
    const HermitianOp sigma = random_density(n, r);
    min_quantum = std::min(min_quantum, quantum_l1_inner_gap(rho, sigma));
  }
  json records = json::array();
  double sup_large = 0.0;
  for (int m : {100, 1000, 10000}) {
    const MontanaroSup s = montanaro_sup(m);
    records.push_back({{"n", m}, {"x", s.x}, {"ratio", s.ratio}});
    sup_large = s.ratio;
  }
  const double floor = -std::max(tags.tol, tol::floor);
  json body;
  body["n"] = n;
  body["classical_pairs"] = tags.samples;
  body["quantum_pairs"] = quantum_trials;
  body["min_l1_inner_gap"] = min_l1;
  body["min_fidelity_step_gap"] = min_fid;
  body["min_pinsker_gap"] = min_pinsker;
  body["infinite_divergences"] = infinite;
  body["min_quantum_l1_inner_gap"] = quantum_trials ? json(min_quantum) : json(nullptr);
  body["montanaro_sup_n10000"] = sup_large;
  body["records"] = std::move(records);
  const bool passed = min_l1 >= floor && min_fid >= floor && (min_pinsker >= floor || std::isinf(min_pinsker)) &&
                      (quantum_trials == 0 || min_quantum >= floor) && sup_large >= 0.95;
  return finish("l1-sweep", std::move(body), passed, tags);
}

Report accinfo(const Ensemble& ensemble, AccessMode mode, const RunTags& tags) {
  check_tags(tags);
  const AccessibleInfo a = mc_accessible_info_lower(ensemble, mode, tags.samples, Rng(tags.seed));
  json body;
  body["dim"] = ensemble.dim();
  body["shape"] = shape_json(ensemble.items().front().second.shape());
  body["mode"] = mode == AccessMode::Single ? "single" : "bipartite";
  body["states"] = ensemble.items().size();
  body["estimate"] = a.estimate.mean;
  body["std_error"] = a.estimate.std_error;
  body["linear_entropy_gap"] = a.linear_entropy_gap;
  body["constant"] = a.constant;
  body["bound"] = a.bound;
  return finish("accinfo", std::move(body), a.passed, tags);
}

Report chain(int d, const RunTags& tags) {
  check_tags(tags);
  require_samples(tags);
  const ChainReport c = chain_report(d, tags.samples, Rng(tags.seed));
  const double lo = 1.0 / (std::sqrt(153.0) * d), hi = 2.0 / (d + 1.0);
  bool bracketed = true;
  json records = json::array();
  for (const auto& e : c.entries) {
    const double slack = tags.tol + kSe * e.std_error.value_or(0.0);
    bracketed = bracketed && e.value >= lo - slack && e.value <= hi + slack;
    records.push_back({{"bound_name", e.bound_name},
                       {"value", e.value},
                       {"provenance", e.provenance},
                       {"std_error", e.std_error ? json(*e.std_error) : json(nullptr)}});
  }
  json body;
  body["d"] = d;
  body["monotone"] = c.monotone;
  body["bracketed"] = bracketed;
  body["lower_end"] = lo;
  body["upper_end"] = hi;
  body["records"] = std::move(records);
  return finish("chain", std::move(body), c.monotone && bracketed, tags);
}

}  // namespace distnorm::reports
