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

/*
 * C interface to the distnorm library.
 *
 * Objects are opaque handles created by dn_*_from_json / dn_*_new functions
 * and released by the matching dn_*_free. Every fallible call returns a
 * dn_status; on failure dn_last_error() describes the problem (per thread,
 * valid until the next failing call on that thread).
 *
 * Report functions store a report handle in *out both on DN_OK and on
 * DN_AUDIT_FAILED, so a failed audit can still be inspected.
 */

#ifndef DISTNORM_H
#define DISTNORM_H

#include <stdint.h>

#if defined(_WIN32)
#define DN_API __declspec(dllexport)
#else
#define DN_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum dn_status {
  DN_OK = 0,
  DN_VALIDATION = 1,    /* input violates an invariant */
  DN_AUDIT_FAILED = 2,  /* computation succeeded, a checked bound did not hold */
  DN_PARSE = 3,         /* malformed JSON or file */
  DN_ARGUMENT = 4,      /* bad scalar argument */
  DN_UNSUPPORTED = 5,   /* outside the supported family, or a size cap */
  DN_INTERNAL = 6
} dn_status;

typedef struct dn_operator dn_operator;
typedef struct dn_design dn_design;
typedef struct dn_ensemble dn_ensemble;
typedef struct dn_report dn_report;

/* Seed, sample count and comparison tolerance recorded in every report.
 * tol may not be below 1e-12. */
typedef struct dn_run {
  uint64_t seed;
  uint64_t samples;
  double tol;
} dn_run;

DN_API const char* dn_version(void);
DN_API const char* dn_last_error(void);
DN_API const char* dn_status_name(dn_status status);

/* Operators: {"dim", "shape", "entries"} JSON. */
DN_API dn_status dn_operator_from_json(const char* json, dn_operator** out);
/* Random traceless operator of unit trace norm; dA or dB <= 0 means no shape
 * (dimension dA alone). */
DN_API dn_status dn_operator_random_traceless(int dA, int dB, uint64_t seed, dn_operator** out);
DN_API int dn_operator_dim(const dn_operator* op);
DN_API dn_status dn_operator_to_json(const dn_operator* op, char** out);
DN_API void dn_operator_free(dn_operator* op);

/* Designs: {"dim", "t", "items"} JSON, or built in. */
DN_API dn_status dn_design_from_json(const char* json, dn_design** out);
DN_API dn_status dn_design_mub(int d, dn_design** out);
DN_API dn_status dn_design_qubit_tetrahedron(dn_design** out);
DN_API int dn_design_dim(const dn_design* design);
DN_API dn_status dn_design_to_json(const dn_design* design, char** out);
DN_API void dn_design_free(dn_design* design);

/* Ensembles: {"items": [{"p", "state"}]} JSON, or random (dB <= 0 for a
 * single system of dimension dA). */
DN_API dn_status dn_ensemble_from_json(const char* json, dn_ensemble** out);
DN_API dn_status dn_ensemble_random(int size, int dA, int dB, uint64_t seed, dn_ensemble** out);
DN_API void dn_ensemble_free(dn_ensemble* e);

/* Reports. The strings are owned by the report. */
DN_API const char* dn_report_json(const dn_report* r);
DN_API const char* dn_report_csv(const dn_report* r);
DN_API int dn_report_passed(const dn_report* r);
DN_API void dn_report_free(dn_report* r);

/* Strings returned through char** are released with dn_string_free. */
DN_API void dn_string_free(char* s);

DN_API dn_status dn_lambda_uniform(int d, const dn_run* run, dn_report** out);
/* xi == NULL selects the rank split (a, b) on C^d. */
DN_API dn_status dn_mc_bias(const dn_operator* xi, int d, int a, int b, const dn_run* run, dn_report** out);
DN_API dn_status dn_mub(int d, const dn_run* run, dn_report** out);
DN_API dn_status dn_design_check(const dn_design* design, int t, const dn_run* run, dn_report** out);
/* design == NULL selects the uniform POVM on C^d (Monte-Carlo). */
DN_API dn_status dn_moments(const dn_design* design, int d, int trials, const dn_run* run, dn_report** out);
DN_API dn_status dn_two_design_audit(const dn_design* design, const dn_run* run, dn_report** out);
DN_API dn_status dn_bipartite_report(const dn_operator* xi, const dn_run* run, dn_report** out);
DN_API dn_status dn_hiding(int d, const dn_run* run, dn_report** out);
/* xi == NULL audits `trials` random operators on dA x dB. */
DN_API dn_status dn_perm_audit(int dA, int dB, int trials, const dn_operator* xi, const dn_run* run,
                               dn_report** out);
/* design == NULL selects the MUB design for d. */
DN_API dn_status dn_certainty(int d, const dn_design* design, const dn_run* run, dn_report** out);
DN_API dn_status dn_l1_sweep(int n, uint64_t quantum_trials, const dn_run* run, dn_report** out);
DN_API dn_status dn_accinfo(const dn_ensemble* e, int bipartite, const dn_run* run, dn_report** out);
DN_API dn_status dn_chain(int d, const dn_run* run, dn_report** out);

#ifdef __cplusplus
}
#endif

#endif /* DISTNORM_H */
