// Copyright 2026 The fuzzykor Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

/* C interface to the fuzzykor library. Every object is an opaque handle that
 * the caller releases with the matching *_free function. Functions return an
 * fk_status; on failure fk_last_error() describes the problem (per thread). */
#ifndef FUZZYKOR_H_
#define FUZZYKOR_H_

#include <stddef.h>
#include <stdint.h>

#if defined(FUZZYKOR_BUILDING)
#define FK_API __attribute__((visibility("default")))
#else
#define FK_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum fk_status {
  FK_OK = 0,
  FK_INVALID_ARGUMENT = 1,
  FK_TRUNCATION_FAILURE = 2,
  FK_IO_ERROR = 3,
  FK_INTERNAL_ERROR = 4,
  FK_DEGENERATE_DELTA = 5
} fk_status;

typedef enum fk_format { FK_FORMAT_CSV = 0, FK_FORMAT_JSON = 1 } fk_format;

typedef struct fk_fuzzy fk_fuzzy;
typedef struct fk_function fk_function;
typedef struct fk_operator fk_operator;
typedef struct fk_method fk_method;
typedef struct fk_report fk_report;
typedef struct fk_rate fk_rate;

typedef double (*fk_scalar_fn)(double x, void* user);
typedef double (*fk_sequence_fn)(uint64_t n, void* user);
/* Custom operator: returns T_n(g; x), where g(y) = g_fn(y, g_user). */
typedef double (*fk_apply_fn)(uint64_t n, fk_scalar_fn g_fn, void* g_user, double x,
                              void* user);

typedef struct fk_settings {
  size_t domain_points; /* uniform grid on the operator interval, >= 3 */
  double tol;           /* truncation tolerance, > 0 */
  uint64_t n_cap;       /* maximum number of series terms, >= 1 */
  double bound_hint;    /* uniform bound on the summands; <= 0 means derive it */
} fk_settings;

typedef struct fk_row {
  double t_or_n;
  double norm_e0;
  double norm_e1;
  double norm_e2;
  double dstar;
  double gamma_t;
  double omega_at_gamma;
  double bound_rhs;
  uint64_t n_used;
} fk_row;

typedef struct fk_rate_bundle {
  double t;
  double gamma_t;
  double omega;
  double e0_norm;
  double M;
  double rhs;
  double k_constant;
  double rhs_k_form;
  double dstar;
  uint64_t n_used;
  int verified;
} fk_rate_bundle;

FK_API const char* fk_version(void);
FK_API const char* fk_last_error(void);
FK_API fk_settings fk_default_settings(void);

/* Fuzzy numbers on a uniform alpha grid with `levels` levels (>= 2). */
FK_API fk_status fk_fuzzy_triangular(double a, double b, double c, size_t levels,
                                     fk_fuzzy** out);
FK_API fk_status fk_fuzzy_from_cuts(size_t levels, const double* lo, const double* hi,
                                    fk_fuzzy** out);
FK_API fk_status fk_fuzzy_parse(const char* text, fk_fuzzy** out);
FK_API void fk_fuzzy_free(fk_fuzzy* x);
FK_API size_t fk_fuzzy_levels(const fk_fuzzy* x);
FK_API fk_status fk_fuzzy_cut(const fk_fuzzy* x, size_t level, double* alpha,
                              double* lo, double* hi);
FK_API fk_status fk_fuzzy_add(const fk_fuzzy* x, const fk_fuzzy* y, fk_fuzzy** out);
FK_API fk_status fk_fuzzy_scale(double lambda, const fk_fuzzy* x, fk_fuzzy** out);
FK_API fk_status fk_fuzzy_distance(const fk_fuzzy* x, const fk_fuzzy* y, double* out);
FK_API fk_status fk_fuzzy_leq(const fk_fuzzy* x, const fk_fuzzy* y, int* out);
/* Number of invariant violations of x. */
FK_API fk_status fk_fuzzy_validate(const fk_fuzzy* x, size_t* violations);
/* Writes the text form (NUL-terminated) if it fits; *needed excludes the NUL. */
FK_API fk_status fk_fuzzy_to_text(const fk_fuzzy* x, char* buf, size_t cap,
                                  size_t* needed);
/* Randomised invariant check; the first failure (if any) is copied to msg. */
FK_API fk_status fk_check_fuzzy_core(uint64_t seed, uint64_t trials, size_t levels,
                                     uint64_t* failures, char* msg, size_t cap);

/* Catalog fuzzy functions on [0, 1]. */
FK_API const char* fk_catalog_names(void);
FK_API fk_status fk_function_create(const char* name, size_t levels, fk_function** out);
FK_API void fk_function_free(fk_function* f);
FK_API fk_status fk_function_eval(const fk_function* f, double x, fk_fuzzy** out);
FK_API fk_status fk_metric_dstar(const fk_function* g, const fk_function* h,
                                 size_t points, double* out);
FK_API fk_status fk_modulus_fuzzy(const fk_function* f, double delta, size_t points,
                                  double* out);
FK_API fk_status fk_modulus_lemma(const fk_function* f, double delta, size_t points,
                                  double* out);
FK_API fk_status fk_function_write_csv(const fk_function* f, size_t points,
                                       const char* path);

/* Operator families. */
FK_API const char* fk_operator_names(void);
FK_API fk_status fk_operator_create(const char* name, fk_operator** out);
FK_API fk_status fk_operator_create_custom(const char* name, fk_apply_fn apply,
                                           void* user, double unit_norm_bound,
                                           fk_operator** out);
FK_API void fk_operator_free(fk_operator* op);
FK_API fk_status fk_operator_apply(const fk_operator* op, uint64_t n, fk_scalar_fn g,
                                   void* g_user, double x, double* out);
FK_API fk_status fk_korovkin_norm(const fk_operator* op, uint64_t n, int i,
                                  size_t points, double* out);

/* Summability methods: "abel" or "weights:<file>". */
FK_API fk_status fk_method_create(const char* spec, fk_method** out);
FK_API fk_status fk_method_from_weights(const double* weights, size_t count,
                                        fk_method** out);
FK_API void fk_method_free(fk_method* m);
FK_API fk_status fk_cube_series(double t, double tol, double* out);
FK_API fk_status fk_transform_sequence(fk_sequence_fn a, void* user, double t,
                                       const fk_method* m, const fk_settings* s,
                                       double* value, uint64_t* terms,
                                       double* tail_bound);

/* Experiments. `s` may be NULL for the defaults. */
FK_API fk_status fk_run_classical(const fk_operator* op, const fk_function* f,
                                  const uint64_t* n, size_t count,
                                  const fk_settings* s, fk_report** out);
FK_API fk_status fk_run_summability(const fk_operator* op, const fk_function* f,
                                    const fk_method* m, const double* t, size_t count,
                                    const fk_settings* s, fk_report** out);
FK_API fk_status fk_run_rate(const fk_operator* op, const fk_function* f,
                             const fk_method* m, const double* t, size_t count,
                             const fk_settings* s, fk_rate** out);

FK_API void fk_report_free(fk_report* r);
/* Renames the experiment id carried in the report rows. */
FK_API fk_status fk_report_set_experiment(fk_report* r, const char* id);
FK_API size_t fk_report_rows(const fk_report* r);
FK_API fk_status fk_report_row(const fk_report* r, size_t i, fk_row* out);
/* Writes the reports, in order, into one document. path "-" is stdout. */
FK_API fk_status fk_reports_write(const fk_report* const* reports, size_t count,
                                  fk_format format, const char* path);

FK_API void fk_rate_free(fk_rate* r);
FK_API size_t fk_rate_count(const fk_rate* r);
FK_API fk_status fk_rate_get(const fk_rate* r, size_t i, fk_rate_bundle* out);
FK_API fk_status fk_rate_write(const fk_rate* r, fk_format format, const char* path);

#ifdef __cplusplus
}
#endif

#endif /* FUZZYKOR_H_ */
