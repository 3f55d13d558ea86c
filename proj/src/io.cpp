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

#include "distnorm/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

namespace distnorm::io {

namespace {

[[noreturn]] void fail(const std::string& what) { throw Error(ErrorCode::Parse, what); }

const json& field(const json& j, const char* key, const char* ctx) {
  if (!j.is_object()) fail(std::string(ctx) + ": expected an object");
  auto it = j.find(key);
  if (it == j.end()) fail(std::string(ctx) + ": missing field \"" + key + "\"");
  return *it;
}

double number(const json& j, const char* ctx) {
  if (!j.is_number()) fail(std::string(ctx) + ": expected a number");
  const double x = j.get<double>();
  if (!std::isfinite(x)) fail(std::string(ctx) + ": non-finite number");
  return x;
}

int integer(const json& j, const char* ctx) {
  if (!j.is_number_integer()) fail(std::string(ctx) + ": expected an integer");
  return j.get<int>();
}

cplx complex_entry(const json& j, const char* ctx) {
  if (!j.is_array() || j.size() != 2) fail(std::string(ctx) + ": entries must be [re, im] pairs");
  return {number(j[0], ctx), number(j[1], ctx)};
}

json complex_json(cplx z) { return json::array({z.real(), z.imag()}); }

Vector vector_from_json(const json& j, int d, const char* ctx) {
  if (!j.is_array() || static_cast<int>(j.size()) != d) {
    std::ostringstream os;
    os << ctx << ": vector must have " << d << " entries";
    fail(os.str());
  }
  Vector v(d);
  for (int i = 0; i < d; ++i) v(i) = complex_entry(j[static_cast<std::size_t>(i)], ctx);
  return v;
}

void write_string(std::ostringstream& os, const std::string& s) { os << json(s).dump(); }

void write(std::ostringstream& os, const json& j, int depth) {
  const std::string pad(static_cast<std::size_t>(2 * (depth + 1)), ' ');
  const std::string close(static_cast<std::size_t>(2 * depth), ' ');
  switch (j.type()) {
    case json::value_t::object: {
      if (j.empty()) {
        os << "{}";
        return;
      }
      os << "{\n";
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) os << ",\n";
        first = false;
        os << pad;
        write_string(os, it.key());
        os << ": ";
        write(os, it.value(), depth + 1);
      }
      os << "\n" << close << "}";
      return;
    }
    case json::value_t::array: {
      if (j.empty()) {
        os << "[]";
        return;
      }
      bool scalars = true;
      for (const auto& e : j) scalars = scalars && !e.is_structured();
      if (scalars) {
        os << "[";
        for (std::size_t i = 0; i < j.size(); ++i) {
          if (i) os << ", ";
          write(os, j[i], depth + 1);
        }
        os << "]";
        return;
      }
      os << "[\n";
      for (std::size_t i = 0; i < j.size(); ++i) {
        if (i) os << ",\n";
        os << pad;
        write(os, j[i], depth + 1);
      }
      os << "\n" << close << "]";
      return;
    }
    case json::value_t::number_float: {
      const double x = j.get<double>();
      if (std::isfinite(x)) os << format_double(x);
      else os << "null";
      return;
    }
    case json::value_t::string:
      write_string(os, j.get<std::string>());
      return;
    default:
      os << j.dump();
  }
}

std::string csv_cell(const json& j) {
  switch (j.type()) {
    case json::value_t::null:
      return "";
    case json::value_t::number_float: {
      const double x = j.get<double>();
      return std::isfinite(x) ? format_double(x) : "";
    }
    case json::value_t::string: {
      const std::string s = j.get<std::string>();
      if (s.find_first_of(",\"\n") == std::string::npos) return s;
      std::string q = "\"";
      for (char c : s) {
        if (c == '"') q += '"';
        q += c;
      }
      return q + "\"";
    }
    default:
      return j.dump();
  }
}

}  // namespace

std::string format_double(double x) {
  if (x == 0.0) x = 0.0;  // drop the sign of negative zero
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

HermitianOp operator_from_json(const json& j) {
  const int d = integer(field(j, "dim", "operator"), "operator.dim");
  if (d < 1 || d > kDimensionCap) fail("operator.dim out of range");
  std::optional<Shape> shape;
  if (auto it = j.find("shape"); it != j.end() && !it->is_null()) {
    if (!it->is_array() || it->size() != 2) fail("operator.shape must be [dA, dB] or null");
    Shape s{integer((*it)[0], "operator.shape"), integer((*it)[1], "operator.shape")};
    if (s.dA < 1 || s.dB < 1 || s.dA * s.dB != d) fail("operator.shape does not multiply to dim");
    shape = s;
  }
  const json& entries = field(j, "entries", "operator");
  if (!entries.is_array() || entries.size() != static_cast<std::size_t>(d) * static_cast<std::size_t>(d)) {
    std::ostringstream os;
    os << "operator.entries must hold " << d * d << " [re, im] pairs";
    fail(os.str());
  }
  Matrix m(d, d);
  for (int r = 0; r < d; ++r)
    for (int c = 0; c < d; ++c)
      m(r, c) = complex_entry(entries[static_cast<std::size_t>(r * d + c)], "operator.entries");
  try {
    return HermitianOp(m, shape);
  } catch (const Error& e) {
    fail(std::string("operator: ") + e.what());
  }
}

json operator_to_json(const HermitianOp& h) {
  json j;
  j["dim"] = h.dim();
  j["shape"] = h.shape() ? json::array({h.shape()->dA, h.shape()->dB}) : json(nullptr);
  json entries = json::array();
  for (int r = 0; r < h.dim(); ++r)
    for (int c = 0; c < h.dim(); ++c) entries.push_back(complex_json(h.matrix()(r, c)));
  j["entries"] = std::move(entries);
  return j;
}

Povm povm_from_json(const json& j) {
  const int d = integer(field(j, "dim", "povm"), "povm.dim");
  const json& effects = field(j, "effects", "povm");
  if (!effects.is_array() || effects.empty()) fail("povm.effects must be a non-empty list");
  std::vector<HermitianOp> ops;
  for (const auto& e : effects) {
    ops.push_back(operator_from_json(e));
    if (ops.back().dim() != d) fail("povm: effect dimension differs from povm.dim");
  }
  return Povm::validate(std::move(ops));
}

json povm_to_json(const Povm& p) {
  json effects = json::array();
  for (const auto& e : p.effects()) effects.push_back(operator_to_json(e));
  return {{"dim", p.dim()}, {"effects", std::move(effects)}};
}

MeasurementFamily family_from_json(const json& j) {
  if (!j.is_array() || j.empty()) fail("family must be a non-empty list of povms");
  std::vector<Povm> povms;
  for (const auto& p : j) povms.push_back(povm_from_json(p));
  return MeasurementFamily::validate(std::move(povms));
}

WeightedDesign design_from_json(const json& j) {
  const int d = integer(field(j, "dim", "design"), "design.dim");
  if (d < 1 || d > kDimensionCap) fail("design.dim out of range");
  const int t = integer(field(j, "t", "design"), "design.t");
  const json& items = field(j, "items", "design");
  if (!items.is_array() || items.empty()) fail("design.items must be a non-empty list");
  std::vector<DesignItem> out;
  for (const auto& it : items) {
    const double w = number(field(it, "weight", "design item"), "design.weight");
    const Vector v = vector_from_json(field(it, "vector", "design item"), d, "design.vector");
    if (v.norm() == 0.0) fail("design.vector is zero");
    out.push_back({w, PureState::normalized(v)});
  }
  return WeightedDesign::validate(std::move(out), t);
}

json design_to_json(const WeightedDesign& d) {
  json items = json::array();
  for (const auto& it : d.items()) {
    json v = json::array();
    for (int i = 0; i < d.dim(); ++i) v.push_back(complex_json(it.vector.amplitudes()(i)));
    items.push_back({{"weight", it.weight}, {"vector", std::move(v)}});
  }
  return {{"dim", d.dim()}, {"t", d.order()}, {"items", std::move(items)}};
}

Ensemble ensemble_from_json(const json& j) {
  const json& items = field(j, "items", "ensemble");
  if (!items.is_array() || items.empty()) fail("ensemble.items must be a non-empty list");
  std::vector<std::pair<double, HermitianOp>> out;
  for (const auto& it : items)
    out.emplace_back(number(field(it, "p", "ensemble item"), "ensemble.p"),
                     operator_from_json(field(it, "state", "ensemble item")));
  return Ensemble::validate(std::move(out));
}

json ensemble_to_json(const Ensemble& e) {
  json items = json::array();
  for (const auto& [p, rho] : e.items()) items.push_back({{"p", p}, {"state", operator_to_json(rho)}});
  return {{"items", std::move(items)}};
}

json parse(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    fail(std::string("invalid JSON: ") + e.what());
  }
}

json read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse(ss.str());
}

std::string emit_json(const json& j) {
  std::ostringstream os;
  write(os, j, 0);
  os << "\n";
  return os.str();
}

std::string emit_csv(const json& j) {
  static const std::vector<std::string> lead = {"seed", "samples", "tol"};
  std::vector<json> rows;
  if (auto it = j.find("records"); j.is_object() && it != j.end() && it->is_array()) {
    for (const auto& r : *it) {
      json row = r.is_object() ? r : json::object();
      rows.push_back(std::move(row));
    }
  } else {
    json row = json::object();
    for (auto it2 = j.begin(); j.is_object() && it2 != j.end(); ++it2)
      if (!it2.value().is_structured()) row[it2.key()] = it2.value();
    rows.push_back(std::move(row));
  }
  std::set<std::string> keys;
  for (const auto& r : rows)
    for (auto it = r.begin(); it != r.end(); ++it) keys.insert(it.key());
  std::vector<std::string> cols = lead;
  for (const auto& k : keys)
    if (std::find(lead.begin(), lead.end(), k) == lead.end()) cols.push_back(k);

  std::ostringstream os;
  for (std::size_t c = 0; c < cols.size(); ++c) os << (c ? "," : "") << cols[c];
  os << "\n";
  for (const auto& r : rows) {
    for (std::size_t c = 0; c < cols.size(); ++c) {
      if (c) os << ",";
      const json* v = nullptr;
      if (auto it = r.find(cols[c]); it != r.end()) v = &*it;
      else if (c < lead.size() && j.is_object() && j.contains(cols[c])) v = &j.at(cols[c]);
      if (v && !v->is_structured()) os << csv_cell(*v);
    }
    os << "\n";
  }
  return os.str();
}

}  // namespace distnorm::io
