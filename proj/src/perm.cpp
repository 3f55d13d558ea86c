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

#include "distnorm/perm.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "distnorm/bipartite.hpp"

namespace distnorm {

namespace {

constexpr double kZeroTol = 1e-9;
constexpr double kBoundTol = 1e-8;

const Shape& require_small_shape(const HermitianOp& xi, const char* what) {
  if (!xi.shape()) {
    std::ostringstream os;
    os << what << ": operator has no bipartite shape";
    throw Error(ErrorCode::Validation, os.str());
  }
  const Shape& s = *xi.shape();
  if (s.dA > kPermLocalCap || s.dB > kPermLocalCap) {
    std::ostringstream os;
    os << what << ": local dimensions " << s.dA << "x" << s.dB << " exceed the cap " << kPermLocalCap;
    throw Error(ErrorCode::CapExceeded, os.str());
  }
  return s;
}

int perm_index(const Perm4& p) {
  const auto& all = all_perms();
  return static_cast<int>(std::find(all.begin(), all.end(), p) - all.begin());
}

bool shared_fixed_point(const Perm4& pi, const Perm4& sigma) {
  for (int i = 0; i < 4; ++i)
    if (pi(i) == i && sigma(i) == i) return true;
  return false;
}

}  // namespace

Perm4 Perm4::from_images(std::array<int, 4> images) {
  std::array<bool, 4> seen{};
  for (int v : images) {
    if (v < 0 || v > 3 || seen[static_cast<std::size_t>(v)])
      throw Error(ErrorCode::Validation, "Perm4: images are not a permutation of {0,1,2,3}");
    seen[static_cast<std::size_t>(v)] = true;
  }
  Perm4 p;
  p.images_ = images;
  return p;
}

Perm4 Perm4::compose(const Perm4& other) const {
  std::array<int, 4> out{};
  for (int i = 0; i < 4; ++i) out[static_cast<std::size_t>(i)] = (*this)(other(i));
  return from_images(out);
}

Perm4 Perm4::inverse() const {
  std::array<int, 4> out{};
  for (int i = 0; i < 4; ++i) out[static_cast<std::size_t>((*this)(i))] = i;
  return from_images(out);
}

std::vector<int> Perm4::cycle_type() const {
  std::array<bool, 4> seen{};
  std::vector<int> lengths;
  for (int i = 0; i < 4; ++i) {
    if (seen[static_cast<std::size_t>(i)]) continue;
    int len = 0;
    for (int j = i; !seen[static_cast<std::size_t>(j)]; j = (*this)(j)) {
      seen[static_cast<std::size_t>(j)] = true;
      ++len;
    }
    lengths.push_back(len);
  }
  std::sort(lengths.rbegin(), lengths.rend());
  return lengths;
}

std::string Perm4::cycle_label() const {
  std::string s;
  for (int l : cycle_type()) s += std::to_string(l);
  return s;
}

std::string Perm4::to_string() const {
  std::string s;
  for (int v : images_) s += std::to_string(v + 1);
  return s;
}

const std::vector<Perm4>& all_perms() {
  static const std::vector<Perm4> perms = [] {
    std::vector<Perm4> out;
    std::array<int, 4> a{0, 1, 2, 3};
    do out.push_back(Perm4::from_images(a));
    while (std::next_permutation(a.begin(), a.end()));
    return out;
  }();
  return perms;
}

const std::vector<PermPairClass>& r_conjugacy_classes() {
  static const std::vector<PermPairClass> classes = [] {
    const auto& perms = all_perms();
    std::vector<int> class_of(576, -1);
    std::vector<PermPairClass> out;
    for (int pair = 0; pair < 576; ++pair) {
      if (class_of[static_cast<std::size_t>(pair)] >= 0) continue;
      PermPairClass c;
      c.class_id = static_cast<int>(out.size());
      c.representative = pair;
      const Perm4& pi = perms[static_cast<std::size_t>(pair / 24)];
      const Perm4& sigma = perms[static_cast<std::size_t>(pair % 24)];
      c.cycle_type_a = pi.cycle_label();
      c.cycle_type_b = sigma.cycle_label();
      for (const Perm4& g : perms) {
        const Perm4 gi = g.inverse();
        const int member = 24 * perm_index(gi.compose(pi).compose(g)) + perm_index(gi.compose(sigma).compose(g));
        if (class_of[static_cast<std::size_t>(member)] < 0) {
          class_of[static_cast<std::size_t>(member)] = c.class_id;
          c.members.push_back(member);
        }
      }
      std::sort(c.members.begin(), c.members.end());
      out.push_back(std::move(c));
    }
    for (auto& c : out) {
      const int swapped = 24 * (c.representative % 24) + c.representative / 24;
      c.swap_partner = class_of[static_cast<std::size_t>(swapped)];
    }
    return out;
  }();
  return classes;
}

PermTrace perm_unitary_trace(const Perm4& pi, const Perm4& sigma, const HermitianOp& xi) {
  const Shape& s = require_small_shape(xi, "perm_unitary_trace");
  const int dA = s.dA, dB = s.dB, D = dA * dB;
  const Matrix& x = xi.matrix();
  cplx total = 0.0;
  std::array<int, 4> alpha{}, a{}, b{};
  for (int n = 0; n < D * D * D * D; ++n) {
    int rest = n;
    for (int i = 3; i >= 0; --i) {
      alpha[static_cast<std::size_t>(i)] = rest % D;
      rest /= D;
    }
    for (int i = 0; i < 4; ++i) {
      a[static_cast<std::size_t>(i)] = alpha[static_cast<std::size_t>(i)] / dB;
      b[static_cast<std::size_t>(i)] = alpha[static_cast<std::size_t>(i)] % dB;
    }
    cplx prod = 1.0;
    for (int i = 0; i < 4; ++i) {
      const int row = a[static_cast<std::size_t>(pi(i))] * dB + b[static_cast<std::size_t>(sigma(i))];
      prod *= x(row, alpha[static_cast<std::size_t>(i)]);
    }
    total += prod;
  }
  return {total.real(), total.imag()};
}

std::vector<PermTrace> all_pair_traces(const HermitianOp& xi) {
  require_small_shape(xi, "all_pair_traces");
  const auto& perms = all_perms();
  std::vector<PermTrace> out(576);
  parallel_for(576, [&](std::size_t pair) {
    out[pair] = perm_unitary_trace(perms[pair / 24], perms[pair % 24], xi);
  });
  return out;
}

ClassEqualityAudit class_equality_audit(const std::vector<PermTrace>& traces) {
  ClassEqualityAudit audit;
  for (const auto& t : traces) audit.max_imag = std::max(audit.max_imag, std::abs(t.imag));
  if (audit.max_imag > kZeroTol) ++audit.violations;
  for (const auto& c : r_conjugacy_classes()) {
    double lo = traces[static_cast<std::size_t>(c.members.front())].value, hi = lo;
    for (int m : c.members) {
      lo = std::min(lo, traces[static_cast<std::size_t>(m)].value);
      hi = std::max(hi, traces[static_cast<std::size_t>(m)].value);
    }
    const double spread = hi - lo;
    if (spread > kBoundTol * (1.0 + std::abs(hi))) ++audit.violations;
    if (spread >= audit.worst_spread) {
      audit.worst_spread = spread;
      audit.worst_class = c.class_id;
    }
  }
  return audit;
}

ClassEqualityAudit class_equality_audit(const HermitianOp& xi) {
  return class_equality_audit(all_pair_traces(xi));
}

double symmetric_projector_trace(const HermitianOp& xi) {
  const Shape& s = require_small_shape(xi, "symmetric_projector_trace");
  const int dA = s.dA, dB = s.dB;
  const Matrix& x = xi.matrix();

  // For each 4-tuple over [d]: its distinct rearrangements.
  auto rearrangements = [](int d) {
    std::vector<std::vector<std::array<int, 4>>> out;
    const auto& perms = all_perms();
    for (int n = 0; n < d * d * d * d; ++n) {
      std::array<int, 4> t{};
      int rest = n;
      for (int i = 3; i >= 0; --i) {
        t[static_cast<std::size_t>(i)] = rest % d;
        rest /= d;
      }
      std::vector<std::array<int, 4>> arr;
      for (const Perm4& p : perms) {
        std::array<int, 4> u{};
        for (int i = 0; i < 4; ++i) u[static_cast<std::size_t>(i)] = t[static_cast<std::size_t>(p(i))];
        arr.push_back(u);
      }
      std::sort(arr.begin(), arr.end());
      arr.erase(std::unique(arr.begin(), arr.end()), arr.end());
      out.push_back(std::move(arr));
    }
    return out;
  };
  const auto arr_a = rearrangements(dA);
  const auto arr_b = rearrangements(dB);

  auto digits = [](int n, int d) {
    std::array<int, 4> t{};
    for (int i = 3; i >= 0; --i) {
      t[static_cast<std::size_t>(i)] = n % d;
      n /= d;
    }
    return t;
  };

  const int na = dA * dA * dA * dA;
  std::vector<cplx> partial(static_cast<std::size_t>(na));
  parallel_for(static_cast<std::size_t>(na), [&](std::size_t ia) {
    const std::array<int, 4> a = digits(static_cast<int>(ia), dA);
    const auto& ra = arr_a[ia];
    cplx acc = 0.0;
    for (int ib = 0; ib < dB * dB * dB * dB; ++ib) {
      const std::array<int, 4> b = digits(ib, dB);
      const auto& rb = arr_b[static_cast<std::size_t>(ib)];
      const double w = 1.0 / (static_cast<double>(ra.size()) * static_cast<double>(rb.size()));
      cplx sum = 0.0;
      for (const auto& ap : ra)
        for (const auto& bp : rb) {
          cplx prod = 1.0;
          for (std::size_t i = 0; i < 4; ++i) prod *= x(ap[i] * dB + bp[i], a[i] * dB + b[i]);
          sum += prod;
        }
      acc += w * sum;
    }
    partial[ia] = acc;
  });
  cplx total = 0.0;
  for (const auto& p : partial) total += p;
  return total.real();
}

namespace {

ProjectorConsistency projector_consistency_from(const std::vector<PermTrace>& traces, double projector) {
  ProjectorConsistency out;
  for (const auto& t : traces) out.pair_sum += t.value;
  out.projector_value = 576.0 * projector;
  out.difference = out.pair_sum - out.projector_value;
  if (std::abs(out.difference) > kBoundTol * (1.0 + std::abs(out.projector_value))) ++out.violations;
  if (out.pair_sum < -kZeroTol) ++out.violations;
  return out;
}

}  // namespace

ProjectorConsistency projector_consistency(const HermitianOp& xi, const std::vector<PermTrace>& traces) {
  return projector_consistency_from(traces, symmetric_projector_trace(xi));
}

ProjectorConsistency projector_consistency(const HermitianOp& xi) {
  return projector_consistency(xi, all_pair_traces(xi));
}

FourthSum single_party_fourth_sum(const HermitianOp& x) {
  const int d = x.dim();
  if (std::abs(x.trace()) > 1e-10 * std::max(1.0, x.matrix().cwiseAbs().maxCoeff()))
    throw Error(ErrorCode::Validation, "single_party_fourth_sum: operator must be traceless");
  if (d > 16) throw Error(ErrorCode::CapExceeded, "single_party_fourth_sum: dimension above 16");
  const Matrix& m = x.matrix();
  cplx total = 0.0;
  for (const Perm4& pi : all_perms()) {
    std::array<int, 4> a{};
    for (int n = 0; n < d * d * d * d; ++n) {
      int rest = n;
      for (int i = 3; i >= 0; --i) {
        a[static_cast<std::size_t>(i)] = rest % d;
        rest /= d;
      }
      cplx prod = 1.0;
      for (int i = 0; i < 4; ++i) prod *= m(a[static_cast<std::size_t>(pi(i))], a[static_cast<std::size_t>(i)]);
      total += prod;
    }
  }
  const Matrix m2 = m * m;
  const double t2 = m2.trace().real();
  return {total.real(), 3.0 * t2 * t2 + 6.0 * m2.squaredNorm()};
}

std::optional<double> class_bound(const std::string& type_a, const std::string& type_b, double t,
                                  double a, double b) {
  using Bound = double (*)(double, double, double);
  static const std::map<std::pair<std::string, std::string>, Bound> table = {
      {{"22", "22"}, [](double t, double, double) { return t * t; }},
      {{"22", "1111"}, [](double, double a, double) { return a * a; }},
      {{"211", "211"}, [](double, double a, double b) { return a * b; }},
      {{"4", "4"}, [](double t, double, double) { return t * t; }},
      {{"4", "211"}, [](double t, double a, double) { return t * a; }},
      {{"4", "31"}, [](double t, double a, double) { return t * (t + a) / 2.0; }},
      {{"4", "22"}, [](double t, double, double) { return t * t; }},
      {{"22", "211"}, [](double t, double a, double) { return t * a; }},
      {{"4", "1111"}, [](double, double a, double) { return a * a; }},
      {{"31", "31"}, [](double t, double a, double b) { return (t * a + t * b) / 2.0; }},
      {{"31", "22"}, [](double t, double, double b) { return t * (t + b) / 2.0; }},
      {{"31", "211"}, [](double t, double a, double b) { return a * (t + b) / 2.0; }},
  };
  if (auto it = table.find({type_a, type_b}); it != table.end()) return it->second(t, a, b);
  if (auto it = table.find({type_b, type_a}); it != table.end()) return it->second(t, b, a);
  return std::nullopt;
}

ClassBoundAudit classwise_bound_audit(const HermitianOp& xi, const std::vector<PermTrace>& traces) {
  const PurityTerms terms = diagram_bound_rhs(xi).terms;
  const auto& perms = all_perms();
  ClassBoundAudit audit;
  for (const auto& c : r_conjugacy_classes()) {
    ClassBoundEntry e;
    e.class_id = c.class_id;
    const Perm4& pi = perms[static_cast<std::size_t>(c.representative / 24)];
    const Perm4& sigma = perms[static_cast<std::size_t>(c.representative % 24)];
    e.representative = pi.to_string() + ":" + sigma.to_string();
    e.size = static_cast<int>(c.members.size());
    e.cycle_types = c.cycle_type_a + ":" + c.cycle_type_b;
    double sum = 0.0;
    for (int m : c.members) sum += traces[static_cast<std::size_t>(m)].value;
    e.value = sum / static_cast<double>(c.members.size());
    e.bound = class_bound(c.cycle_type_a, c.cycle_type_b, terms.t, terms.a, terms.b);
    e.shared_fixed_point = shared_fixed_point(pi, sigma);
    bool bad = false;
    if (e.bound) {
      e.margin = *e.bound - e.value;
      if (e.margin < -kBoundTol) bad = true;
    } else {
      e.margin = -std::abs(e.value);
      if (std::abs(e.value) > kZeroTol) {
        ++audit.unbounded_nonzero;
        bad = true;
      }
    }
    if (e.shared_fixed_point && std::abs(e.value) > kZeroTol) {
      ++audit.fixed_point_nonzero;
      bad = true;
    }
    if (bad) ++audit.violations;
    audit.classes.push_back(std::move(e));
  }
  return audit;
}

ClassBoundAudit classwise_bound_audit(const HermitianOp& xi) {
  return classwise_bound_audit(xi, all_pair_traces(xi));
}

namespace {

AggregateAudit aggregate_from(const HermitianOp& xi, const std::vector<PermTrace>& traces, double projector) {
  AggregateAudit out;
  for (const auto& t : traces) out.pair_sum += t.value;
  out.detailed_bound = diagram_bound_rhs(xi).detailed;
  out.projector_value = projector;
  out.projector_bound = out.detailed_bound / 576.0;
  if (out.pair_sum > out.detailed_bound + kBoundTol) ++out.violations;
  if (out.projector_value > out.projector_bound + kBoundTol) ++out.violations;
  return out;
}

}  // namespace

AggregateAudit aggregate_diagram_bound_audit(const HermitianOp& xi, const std::vector<PermTrace>& traces) {
  return aggregate_from(xi, traces, symmetric_projector_trace(xi));
}

AggregateAudit aggregate_diagram_bound_audit(const HermitianOp& xi) {
  return aggregate_diagram_bound_audit(xi, all_pair_traces(xi));
}

std::pair<double, double> symmetric_normalisation_check(int d) {
  double sum = 0.0;
  for (const Perm4& p : all_perms()) sum += std::pow(static_cast<double>(d), p.cycle_count());
  const double dd = d;
  return {sum, dd * (dd + 1) * (dd + 2) * (dd + 3)};
}

PermAudit perm_audit(const HermitianOp& xi) {
  const std::vector<PermTrace> traces = all_pair_traces(xi);
  PermAudit out;
  out.equality = class_equality_audit(traces);
  const double projector = symmetric_projector_trace(xi);
  out.projector = projector_consistency_from(traces, projector);
  out.bounds = classwise_bound_audit(xi, traces);
  out.aggregate = aggregate_from(xi, traces, projector);
  return out;
}

}  // namespace distnorm
