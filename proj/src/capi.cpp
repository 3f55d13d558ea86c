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

#include "distnorm/distnorm.h"

#include <cstring>
#include <new>
#include <string>

#include "distnorm/reports.hpp"

struct dn_operator {
  distnorm::HermitianOp op;
};

struct dn_design {
  distnorm::WeightedDesign design;
};

struct dn_ensemble {
  distnorm::Ensemble ensemble;
};

struct dn_report {
  std::string json;
  std::string csv;
  bool passed;
};

namespace {

using namespace distnorm;

thread_local std::string g_last_error;

dn_status set_error(dn_status s, const std::string& what) {
  g_last_error = what;
  return s;
}

dn_status map_code(ErrorCode c) {
  switch (c) {
    case ErrorCode::Validation:
    case ErrorCode::DimensionMismatch:
      return DN_VALIDATION;
    case ErrorCode::Unsupported:
    case ErrorCode::CapExceeded:
      return DN_UNSUPPORTED;
    case ErrorCode::Parse:
      return DN_PARSE;
    case ErrorCode::Argument:
      return DN_ARGUMENT;
  }
  return DN_INTERNAL;
}

template <class F>
dn_status guard(F&& f) {
  try {
    return f();
  } catch (const Error& e) {
    return set_error(map_code(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return set_error(DN_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return set_error(DN_INTERNAL, e.what());
  }
}

reports::RunTags tags(const dn_run* run) {
  if (!run) throw Error(ErrorCode::Argument, "run parameters are NULL");
  return {run->seed, run->samples, run->tol};
}

template <class T>
void require(const T* p, const char* what) {
  if (!p) throw Error(ErrorCode::Argument, std::string(what) + " is NULL");
}

dn_status deliver(reports::Report r, dn_report** out) {
  auto* rep = new dn_report{io::emit_json(r.body), io::emit_csv(r.body), r.passed};
  *out = rep;
  if (!r.passed) return set_error(DN_AUDIT_FAILED, "audit failed: a checked bound did not hold");
  return DN_OK;
}

char* copy_string(const std::string& s) {
  char* c = new char[s.size() + 1];
  std::memcpy(c, s.c_str(), s.size() + 1);
  return c;
}

}  // namespace

extern "C" {

const char* dn_version(void) { return "0.1.0"; }

const char* dn_last_error(void) { return g_last_error.c_str(); }

const char* dn_status_name(dn_status status) {
  switch (status) {
    case DN_OK: return "ok";
    case DN_VALIDATION: return "validation";
    case DN_AUDIT_FAILED: return "audit_failed";
    case DN_PARSE: return "parse";
    case DN_ARGUMENT: return "argument";
    case DN_UNSUPPORTED: return "unsupported";
    case DN_INTERNAL: return "internal";
  }
  return "unknown";
}

dn_status dn_operator_from_json(const char* json, dn_operator** out) {
  return guard([&] {
    require(json, "json");
    require(out, "out");
    *out = new dn_operator{io::operator_from_json(io::parse(json))};
    return DN_OK;
  });
}

dn_status dn_operator_random_traceless(int dA, int dB, uint64_t seed, dn_operator** out) {
  return guard([&] {
    require(out, "out");
    if (dA < 1) throw Error(ErrorCode::Argument, "dA must be positive");
    Rng rng(seed);
    std::optional<Shape> shape;
    int d = dA;
    if (dB > 0) {
      shape = Shape{dA, dB};
      d = dA * dB;
    }
    if (d < 2 || d > kDimensionCap) throw Error(ErrorCode::Argument, "dimension out of range");
    *out = new dn_operator{random_traceless(d, rng, shape)};
    return DN_OK;
  });
}

int dn_operator_dim(const dn_operator* op) { return op ? op->op.dim() : 0; }

dn_status dn_operator_to_json(const dn_operator* op, char** out) {
  return guard([&] {
    require(op, "operator");
    require(out, "out");
    *out = copy_string(io::emit_json(io::operator_to_json(op->op)));
    return DN_OK;
  });
}

void dn_operator_free(dn_operator* op) { delete op; }

dn_status dn_design_from_json(const char* json, dn_design** out) {
  return guard([&] {
    require(json, "json");
    require(out, "out");
    *out = new dn_design{io::design_from_json(io::parse(json))};
    return DN_OK;
  });
}

dn_status dn_design_mub(int d, dn_design** out) {
  return guard([&] {
    require(out, "out");
    *out = new dn_design{mub_design(d)};
    return DN_OK;
  });
}

dn_status dn_design_qubit_tetrahedron(dn_design** out) {
  return guard([&] {
    require(out, "out");
    *out = new dn_design{uniform_design(qubit_tetrahedron(), 2)};
    return DN_OK;
  });
}

int dn_design_dim(const dn_design* design) { return design ? design->design.dim() : 0; }

dn_status dn_design_to_json(const dn_design* design, char** out) {
  return guard([&] {
    require(design, "design");
    require(out, "out");
    *out = copy_string(io::emit_json(io::design_to_json(design->design)));
    return DN_OK;
  });
}

void dn_design_free(dn_design* design) { delete design; }

dn_status dn_ensemble_from_json(const char* json, dn_ensemble** out) {
  return guard([&] {
    require(json, "json");
    require(out, "out");
    *out = new dn_ensemble{io::ensemble_from_json(io::parse(json))};
    return DN_OK;
  });
}

dn_status dn_ensemble_random(int size, int dA, int dB, uint64_t seed, dn_ensemble** out) {
  return guard([&] {
    require(out, "out");
    if (dA < 1) throw Error(ErrorCode::Argument, "dA must be positive");
    Rng rng(seed);
    std::optional<Shape> shape;
    int d = dA;
    if (dB > 0) {
      shape = Shape{dA, dB};
      d = dA * dB;
    }
    if (d < 2 || d > kDimensionCap) throw Error(ErrorCode::Argument, "dimension out of range");
    *out = new dn_ensemble{random_ensemble(size, d, shape, rng)};
    return DN_OK;
  });
}

void dn_ensemble_free(dn_ensemble* e) { delete e; }

const char* dn_report_json(const dn_report* r) { return r ? r->json.c_str() : ""; }
const char* dn_report_csv(const dn_report* r) { return r ? r->csv.c_str() : ""; }
int dn_report_passed(const dn_report* r) { return r && r->passed ? 1 : 0; }
void dn_report_free(dn_report* r) { delete r; }
void dn_string_free(char* s) { delete[] s; }

dn_status dn_lambda_uniform(int d, const dn_run* run, dn_report** out) {
  return guard([&] {
    require(out, "out");
    return deliver(reports::lambda_uniform(d, tags(run)), out);
  });
}

dn_status dn_mc_bias(const dn_operator* xi, int d, int a, int b, const dn_run* run, dn_report** out) {
  return guard([&] {
    require(out, "out");
    if (xi) return deliver(reports::mc_bias(xi->op, std::nullopt, tags(run)), out);
    const RankSplit split = RankSplit::canonical(a, b);
    return deliver(reports::mc_bias(reports::rank_split_operator(d, a, b), split, tags(run)), out);
  });
}

dn_status dn_mub(int d, const dn_run* run, dn_report** out) {
  return guard([&] {
    require(out, "out");
    return deliver(reports::mub(d, tags(run)), out);
  });
}

dn_status dn_design_check(const dn_design* design, int t, const dn_run* run, dn_report** out) {
  return guard([&] {
    require(design, "design");
    require(out, "out");
    return deliver(reports::design_check(design->design, t, tags(run)), out);
  });
}

dn_status dn_moments(const dn_design* design, int d, int trials, const dn_run* run, dn_report** out) {
  return guard([&] {
    require(out, "out");
    std::optional<WeightedDesign> dsg;
    if (design) dsg = design->design;
    return deliver(reports::moments(dsg, d, trials, tags(run)), out);
  });
}

dn_status dn_two_design_audit(const dn_design* design, const dn_run* run, dn_report** out) {
  return guard([&] {
    require(design, "design");
    require(out, "out");
    return deliver(reports::two_design_audit(design->design, tags(run)), out);
  });
}

dn_status dn_bipartite_report(const dn_operator* xi, const dn_run* run, dn_report** out) {
  return guard([&] {
    require(xi, "operator");
    require(out, "out");
    return deliver(reports::bipartite(xi->op, tags(run)), out);
  });
}

dn_status dn_hiding(int d, const dn_run* run, dn_report** out) {
  return guard([&] {
    require(out, "out");
    return deliver(reports::hiding(d, tags(run)), out);
  });
}

dn_status dn_perm_audit(int dA, int dB, int trials, const dn_operator* xi, const dn_run* run, dn_report** out) {
  return guard([&] {
    require(out, "out");
    std::optional<HermitianOp> op;
    if (xi) op = xi->op;
    return deliver(reports::perm_audit(Shape{dA, dB}, trials, op, tags(run)), out);
  });
}

dn_status dn_certainty(int d, const dn_design* design, const dn_run* run, dn_report** out) {
  return guard([&] {
    require(out, "out");
    std::optional<WeightedDesign> dsg;
    if (design) dsg = design->design;
    return deliver(reports::certainty(d, dsg, tags(run)), out);
  });
}

dn_status dn_l1_sweep(int n, uint64_t quantum_trials, const dn_run* run, dn_report** out) {
  return guard([&] {
    require(out, "out");
    return deliver(reports::l1_sweep(n, quantum_trials, tags(run)), out);
  });
}

dn_status dn_accinfo(const dn_ensemble* e, int bipartite, const dn_run* run, dn_report** out) {
  return guard([&] {
    require(e, "ensemble");
    require(out, "out");
    return deliver(reports::accinfo(e->ensemble, bipartite ? AccessMode::Bipartite : AccessMode::Single, tags(run)),
                   out);
  });
}

dn_status dn_chain(int d, const dn_run* run, dn_report** out) {
  return guard([&] {
    require(out, "out");
    return deliver(reports::chain(d, tags(run)), out);
  });
}

}  // extern "C"
