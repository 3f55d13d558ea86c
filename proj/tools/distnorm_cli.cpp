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

// distnorm command-line front end. Every command prints one report (JSON by
// default, CSV with --format csv) tagged with seed, samples and tol.
//
// Exit codes: 0 ok, 1 validation error, 2 audit violation, 64 usage,
// 65 malformed input file.

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "distnorm/distnorm.h"

namespace {

constexpr int kExitUsage = 64;
constexpr int kExitParse = 65;

int exit_code(dn_status s) {
  switch (s) {
    case DN_OK: return 0;
    case DN_AUDIT_FAILED: return 2;
    case DN_PARSE: return kExitParse;
    case DN_ARGUMENT: return kExitUsage;
    default: return 1;
  }
}

struct Failure {
  dn_status status;
  std::string what;
};

void check(dn_status s) {
  if (s != DN_OK) throw Failure{s, dn_last_error()};
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Failure{DN_PARSE, "cannot read " + path};
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

template <class T, void (*Free)(T*)>
struct Handle {
  T* p = nullptr;
  Handle() = default;
  Handle(const Handle&) = delete;
  Handle& operator=(const Handle&) = delete;
  ~Handle() {
    if (p) Free(p);
  }
};

using OpHandle = Handle<dn_operator, dn_operator_free>;
using DesignHandle = Handle<dn_design, dn_design_free>;
using EnsembleHandle = Handle<dn_ensemble, dn_ensemble_free>;
using ReportHandle = Handle<dn_report, dn_report_free>;

struct Output {
  std::string format = "json";
  std::string path;
};

struct Common {
  dn_run run{0, 0, 1e-9};
  Output out;
};

void add_output(CLI::App* sub, Output& out) {
  sub->add_option("--format", out.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  sub->add_option("--out", out.path, "write the report to this file instead of stdout");
}

void add_seed(CLI::App* sub, Common& c, std::uint64_t seed) {
  c.run.seed = seed;
  sub->add_option("--seed", c.run.seed, "random seed")->capture_default_str();
}

void add_samples(CLI::App* sub, Common& c, std::uint64_t samples, const char* what = "Monte-Carlo samples") {
  c.run.samples = samples;
  sub->add_option("--samples", c.run.samples, what)->capture_default_str();
}

void add_tol(CLI::App* sub, Common& c, double tol) {
  c.run.tol = tol;
  sub->add_option("--tol", c.run.tol, "comparison tolerance, at least 1e-12")->capture_default_str();
}

// Design source shared by several commands: --mub D, --design FILE or
// --tetrahedron.
struct DesignSource {
  int mub = 0;
  std::string file;
  bool tetrahedron = false;
};

void add_design_source(CLI::App* sub, DesignSource& s) {
  auto* m = sub->add_option("--mub", s.mub, "MUB design in prime dimension D");
  auto* f = sub->add_option("--design", s.file, "design file");
  auto* t = sub->add_flag("--tetrahedron", s.tetrahedron, "qubit SIC (tetrahedron) design");
  m->excludes(f)->excludes(t);
  f->excludes(t);
}

bool has_design(const DesignSource& s) { return s.mub > 0 || !s.file.empty() || s.tetrahedron; }

void load_design(const DesignSource& s, DesignHandle& h) {
  if (s.mub > 0) check(dn_design_mub(s.mub, &h.p));
  else if (!s.file.empty()) check(dn_design_from_json(slurp(s.file).c_str(), &h.p));
  else if (s.tetrahedron) check(dn_design_qubit_tetrahedron(&h.p));
  else throw Failure{DN_ARGUMENT, "a design is required (--mub, --design or --tetrahedron)"};
}

void load_operator(const std::string& path, OpHandle& h) {
  check(dn_operator_from_json(slurp(path).c_str(), &h.p));
}

int emit(dn_status s, const ReportHandle& r, const Output& out) {
  if (s != DN_OK && s != DN_AUDIT_FAILED) throw Failure{s, dn_last_error()};
  const char* text = out.format == "csv" ? dn_report_csv(r.p) : dn_report_json(r.p);
  if (out.path.empty()) {
    std::fputs(text, stdout);
  } else {
    std::ofstream f(out.path, std::ios::binary);
    if (!f || !(f << text)) throw Failure{DN_VALIDATION, "cannot write " + out.path};
  }
  if (s == DN_AUDIT_FAILED) std::fprintf(stderr, "distnorm: %s\n", dn_last_error());
  return exit_code(s);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Distinguishability norms: verification and computation commands"};
  app.require_subcommand(1);
  app.set_version_flag("--version", dn_version());
  std::function<int()> action;

  // lambda-uniform
  Common lu;
  int lu_d = 0;
  {
    auto* sub = app.add_subcommand("lambda-uniform", "exact lambda of the uniform POVM by rank-split enumeration");
    sub->add_option("--d", lu_d, "dimension")->required();
    add_tol(sub, lu, 1e-12);
    add_output(sub, lu.out);
    sub->callback([&] {
      action = [&] {
        ReportHandle r;
        return emit(dn_lambda_uniform(lu_d, &lu.run, &r.p), r, lu.out);
      };
    });
  }

  // mc-bias
  Common mb;
  int mb_d = 2, mb_a = 1, mb_b = 1;
  std::string mb_op;
  {
    auto* sub = app.add_subcommand("mc-bias", "Monte-Carlo uniform-POVM norm of a rank split or operator file");
    sub->add_option("--d", mb_d, "dimension of the rank-split operator")->capture_default_str();
    sub->add_option("--a", mb_a, "positive rank")->capture_default_str();
    sub->add_option("--b", mb_b, "negative rank")->capture_default_str();
    sub->add_option("--op", mb_op, "operator file (replaces the rank split)");
    add_seed(sub, mb, 1);
    add_samples(sub, mb, 100000);
    add_tol(sub, mb, 1e-9);
    add_output(sub, mb.out);
    sub->callback([&] {
      action = [&] {
        OpHandle op;
        if (!mb_op.empty()) load_operator(mb_op, op);
        ReportHandle r;
        return emit(dn_mc_bias(op.p, mb_d, mb_a, mb_b, &mb.run, &r.p), r, mb.out);
      };
    });
  }

  // mub
  Common mu;
  int mu_d = 0;
  {
    auto* sub = app.add_subcommand("mub", "MUB construction: 2-design defect and same-basis distance");
    sub->add_option("--d", mu_d, "prime dimension")->required();
    add_tol(sub, mu, 1e-12);
    add_output(sub, mu.out);
    sub->callback([&] {
      action = [&] {
        ReportHandle r;
        return emit(dn_mub(mu_d, &mu.run, &r.p), r, mu.out);
      };
    });
  }

  // design-check
  Common dc;
  DesignSource dc_src;
  int dc_t = 2;
  {
    auto* sub = app.add_subcommand("design-check", "t-design defect of a weighted design (SIC extras when d^2 items)");
    add_design_source(sub, dc_src);
    sub->add_option("--t", dc_t, "design order to test")->capture_default_str();
    add_tol(sub, dc, 1e-9);
    add_output(sub, dc.out);
    sub->callback([&] {
      action = [&] {
        DesignHandle d;
        load_design(dc_src, d);
        ReportHandle r;
        return emit(dn_design_check(d.p, dc_t, &dc.run, &r.p), r, dc.out);
      };
    });
  }

  // moments
  Common mo;
  DesignSource mo_src;
  int mo_d = 0, mo_trials = 0;
  {
    auto* sub = app.add_subcommand("moments", "second/fourth moment identities for a design or the uniform POVM");
    add_design_source(sub, mo_src);
    sub->add_option("--d", mo_d, "dimension for the uniform POVM (no design given)");
    sub->add_option("--trials", mo_trials, "random traceless operators (default 100 for designs, 5 uniform)");
    add_seed(sub, mo, 1);
    add_samples(sub, mo, 100000, "Monte-Carlo samples per operator (uniform POVM)");
    add_tol(sub, mo, 1e-9);
    add_output(sub, mo.out);
    sub->callback([&] {
      action = [&] {
        DesignHandle d;
        const bool design = has_design(mo_src);
        if (design) {
          load_design(mo_src, d);
          mo.run.samples = 0;
        } else if (mo_d < 2) {
          throw Failure{DN_ARGUMENT, "moments: give a design or --d for the uniform POVM"};
        }
        const int trials = mo_trials > 0 ? mo_trials : (design ? 100 : 5);
        ReportHandle r;
        return emit(dn_moments(d.p, mo_d, trials, &mo.run, &r.p), r, mo.out);
      };
    });
  }

  // two-design-audit
  Common td;
  DesignSource td_src;
  {
    auto* sub = app.add_subcommand("two-design-audit", "random orthogonal pairs against the 1/(d+1) design bound");
    add_design_source(sub, td_src);
    add_seed(sub, td, 1);
    td.run.samples = 10000;
    sub->add_option("--trials,--samples", td.run.samples, "random orthogonal pairs")->capture_default_str();
    add_tol(sub, td, 1e-9);
    add_output(sub, td.out);
    sub->callback([&] {
      action = [&] {
        DesignHandle d;
        load_design(td_src, d);
        ReportHandle r;
        return emit(dn_two_design_audit(d.p, &td.run, &r.p), r, td.out);
      };
    });
  }

  // bipartite-report
  Common bp;
  int bp_da = 2, bp_db = 2;
  std::string bp_op;
  {
    auto* sub = app.add_subcommand("bipartite-report", "local-uniform moments and SEP / local bias bounds");
    sub->add_option("--op", bp_op, "shaped traceless operator file");
    sub->add_option("--dA", bp_da, "random operator: first factor")->capture_default_str();
    sub->add_option("--dB", bp_db, "random operator: second factor")->capture_default_str();
    add_seed(sub, bp, 1);
    add_samples(sub, bp, 100000);
    add_tol(sub, bp, 1e-9);
    add_output(sub, bp.out);
    sub->callback([&] {
      action = [&] {
        OpHandle op;
        if (!bp_op.empty()) load_operator(bp_op, op);
        else check(dn_operator_random_traceless(bp_da, bp_db, bp.run.seed, &op.p));
        ReportHandle r;
        return emit(dn_bipartite_report(op.p, &bp.run, &r.p), r, bp.out);
      };
    });
  }

  // hiding
  Common hi;
  int hi_d = 0;
  {
    auto* sub = app.add_subcommand("hiding", "PPT bias of the symmetric/antisymmetric hiding pair");
    sub->add_option("--d", hi_d, "local dimension")->required();
    add_tol(sub, hi, 1e-9);
    add_output(sub, hi.out);
    sub->callback([&] {
      action = [&] {
        ReportHandle r;
        return emit(dn_hiding(hi_d, &hi.run, &r.p), r, hi.out);
      };
    });
  }

  // perm-audit
  Common pa;
  int pa_da = 2, pa_db = 2, pa_trials = 100;
  std::string pa_op;
  {
    auto* sub = app.add_subcommand("perm-audit", "permutation-pair trace audits over the 43 conjugacy classes");
    sub->add_option("--dA", pa_da, "first factor (at most 3)")->capture_default_str();
    sub->add_option("--dB", pa_db, "second factor (at most 3)")->capture_default_str();
    sub->add_option("--trials", pa_trials, "random operators")->capture_default_str();
    sub->add_option("--op", pa_op, "audit one shaped operator and emit its class table");
    add_seed(sub, pa, 0);
    add_tol(sub, pa, 1e-9);
    add_output(sub, pa.out);
    sub->callback([&] {
      action = [&] {
        OpHandle op;
        if (!pa_op.empty()) load_operator(pa_op, op);
        pa.run.samples = op.p ? 1 : static_cast<std::uint64_t>(std::max(pa_trials, 0));
        ReportHandle r;
        return emit(dn_perm_audit(pa_da, pa_db, pa_trials, op.p, &pa.run, &r.p), r, pa.out);
      };
    });
  }

  // certainty
  Common ce;
  int ce_d = 0;
  std::string ce_design;
  {
    auto* sub = app.add_subcommand("certainty", "MUB certainty relation and 2-design entropy chain on Haar states");
    sub->add_option("--d", ce_d, "prime dimension")->required();
    sub->add_option("--design", ce_design, "2-design file (default: MUB design)");
    add_seed(sub, ce, 1);
    ce.run.samples = 1000;
    sub->add_option("--states,--samples", ce.run.samples, "Haar states")->capture_default_str();
    add_tol(sub, ce, 1e-12);
    add_output(sub, ce.out);
    sub->callback([&] {
      action = [&] {
        DesignHandle d;
        if (!ce_design.empty()) check(dn_design_from_json(slurp(ce_design).c_str(), &d.p));
        ReportHandle r;
        return emit(dn_certainty(ce_d, d.p, &ce.run, &r.p), r, ce.out);
      };
    });
  }

  // l1-sweep
  Common ls;
  int ls_n = 4;
  std::uint64_t ls_quantum = 10000;
  {
    auto* sub = app.add_subcommand("l1-sweep", "l1 / inner-product inequality sweeps and the Montanaro family");
    sub->add_option("--n", ls_n, "length (classical) and dimension (quantum)")->capture_default_str();
    sub->add_option("--quantum-trials", ls_quantum, "random density pairs")->capture_default_str();
    add_seed(sub, ls, 1);
    add_samples(sub, ls, 100000, "random classical pairs");
    add_tol(sub, ls, 1e-12);
    add_output(sub, ls.out);
    sub->callback([&] {
      action = [&] {
        ReportHandle r;
        return emit(dn_l1_sweep(ls_n, ls_quantum, &ls.run, &r.p), r, ls.out);
      };
    });
  }

  // accinfo
  Common ai;
  std::string ai_file, ai_mode = "single";
  int ai_size = 4, ai_d = 2, ai_da = 0, ai_db = 0;
  {
    auto* sub = app.add_subcommand("accinfo", "Monte-Carlo accessible-information lower bound");
    sub->add_option("--ensemble", ai_file, "ensemble file");
    sub->add_option("--mode", ai_mode, "single or bipartite")->check(CLI::IsMember({"single", "bipartite"}));
    sub->add_option("--size", ai_size, "random ensemble: number of states")->capture_default_str();
    sub->add_option("--d", ai_d, "random ensemble: dimension (single mode)")->capture_default_str();
    sub->add_option("--dA", ai_da, "random ensemble: first factor (bipartite mode)");
    sub->add_option("--dB", ai_db, "random ensemble: second factor (bipartite mode)");
    add_seed(sub, ai, 1);
    add_samples(sub, ai, 100000);
    add_tol(sub, ai, 1e-9);
    add_output(sub, ai.out);
    sub->callback([&] {
      action = [&] {
        const bool bipartite = ai_mode == "bipartite";
        EnsembleHandle e;
        if (!ai_file.empty()) {
          check(dn_ensemble_from_json(slurp(ai_file).c_str(), &e.p));
        } else if (bipartite) {
          if (ai_da < 1 || ai_db < 1) throw Failure{DN_ARGUMENT, "accinfo: bipartite mode needs --dA and --dB"};
          check(dn_ensemble_random(ai_size, ai_da, ai_db, ai.run.seed, &e.p));
        } else {
          check(dn_ensemble_random(ai_size, ai_d, 0, ai.run.seed, &e.p));
        }
        ReportHandle r;
        return emit(dn_accinfo(e.p, bipartite ? 1 : 0, &ai.run, &r.p), r, ai.out);
      };
    });
  }

  // chain
  Common ch;
  int ch_d = 0;
  {
    auto* sub = app.add_subcommand("chain", "locality chain of norms on the hiding direction");
    sub->add_option("--d", ch_d, "local dimension")->required();
    add_seed(sub, ch, 1);
    add_samples(sub, ch, 100000);
    add_tol(sub, ch, 1e-9);
    add_output(sub, ch.out);
    sub->callback([&] {
      action = [&] {
        ReportHandle r;
        return emit(dn_chain(ch_d, &ch.run, &r.p), r, ch.out);
      };
    });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    return action();
  } catch (const Failure& f) {
    std::fprintf(stderr, "distnorm: %s: %s\n", dn_status_name(f.status), f.what.c_str());
    return exit_code(f.status);
  }
}
