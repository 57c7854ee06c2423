#ifndef LAMBDAVAR_H
#define LAMBDAVAR_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(LAMBDAVAR_BUILDING)
#    define LVAR_API __declspec(dllexport)
#  else
#    define LVAR_API __declspec(dllimport)
#  endif
#else
#  define LVAR_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

/* Status codes. The first five double as CLI exit codes. */
typedef enum lvar_status {
  LVAR_OK = 0,
  LVAR_USAGE = 1,
  LVAR_INVALID_INPUT = 2,
  LVAR_VIOLATION = 3,
  LVAR_RESOURCE = 4,
  LVAR_DOMAIN = 5,
  LVAR_INTERNAL = 6
} lvar_status;

typedef enum lvar_operator { LVAR_BERNSTEIN = 0, LVAR_KANTOROVICH = 1 } lvar_operator;

typedef enum lvar_monotonicity {
  LVAR_INCREASING = 0,
  LVAR_DECREASING = 1,
  LVAR_CONSTANT = 2,
  LVAR_NOT_MONOTONE = 3
} lvar_monotonicity;

typedef struct lvar_lambda lvar_lambda;
typedef struct lvar_function lvar_function;
typedef struct lvar_report lvar_report;

/* Message of the last failed call on this thread; "" when none. */
LVAR_API const char* lvar_last_error(void);
LVAR_API const char* lvar_version(void);
/* Releases strings returned through char** out-parameters. */
LVAR_API void lvar_string_free(char* s);
/* %.17g with a trailing ".0" for integral values; needs at least 32 bytes. */
LVAR_API lvar_status lvar_format_number(double v, char* buf, size_t cap);

/* ---- lambda sequences */
LVAR_API lvar_status lvar_lambda_from_json(const char* json, lvar_lambda** out);
LVAR_API lvar_status lvar_lambda_to_json(const lvar_lambda* seq, char** out);
LVAR_API void lvar_lambda_free(lvar_lambda* seq);
LVAR_API lvar_status lvar_lambda_term(const lvar_lambda* seq, size_t n, double* out);
LVAR_API lvar_status lvar_lambda_tail(const lvar_lambda* seq, size_t m, lvar_lambda** out);
LVAR_API lvar_status lvar_shao_sablin_ratio(const lvar_lambda* seq, size_t n, double* out);
/* [{"n":..,"ratio":..}, ...] */
LVAR_API lvar_status lvar_shao_sablin_profile(const lvar_lambda* seq, const size_t* points,
                                              size_t count, char** out_json);

/* ---- functions */
LVAR_API lvar_status lvar_function_from_json(const char* json, lvar_function** out);
LVAR_API lvar_status lvar_function_named(const char* name, lvar_function** out);
LVAR_API lvar_status lvar_function_to_json(const lvar_function* f, char** out);
LVAR_API void lvar_function_free(lvar_function* f);
LVAR_API lvar_status lvar_function_eval(const lvar_function* f, double x, double* out);

/* Result is a Bernstein-form polynomial handle. */
LVAR_API lvar_status lvar_apply_operator(const lvar_function* f, lvar_operator op, size_t n,
                                         lvar_function** out);
/* Copies up to cap coefficients; *count receives the full count. */
LVAR_API lvar_status lvar_bernstein_coefficients(const lvar_function* p, double* buf, size_t cap,
                                                 size_t* count);
LVAR_API lvar_status lvar_monotone_certificate(const lvar_function* p, lvar_monotonicity* out);

/* ---- variation */
typedef struct lvar_variation_options {
  size_t tail;       /* drop the first `tail` weights */
  double delta;      /* > 0: restrict to systems with mesh <= delta */
  size_t resolution; /* uniform grid resolution for restricted runs */
} lvar_variation_options;

LVAR_API void lvar_variation_options_default(lvar_variation_options* opts);
/* VariationResult JSON: value, witness, assignment, method[, grid_upper_bound]. */
LVAR_API lvar_status lvar_variation(const lvar_function* f, const lvar_lambda* seq,
                                    const lvar_variation_options* opts, char** out_json);
LVAR_API lvar_status lvar_variation_value(const lvar_function* f, const lvar_lambda* seq,
                                          double* out);
LVAR_API lvar_status lvar_norm(const lvar_function* f, const lvar_lambda* seq, double* out);
LVAR_API lvar_status lvar_wiener_profile(const lvar_function* f, const lvar_lambda* seq,
                                         const double* deltas, size_t count, size_t resolution,
                                         char** out_json);

/* ---- campaigns */
typedef struct lvar_diminish_config {
  uint64_t seed;
  size_t cases;
  size_t max_breakpoints;
  double value_lo;
  double value_hi;
  size_t n_min;
  size_t n_max;
  int use_bernstein;
  int use_kantorovich;
  /* comma list of constant, linear, power, nlog */
  const char* lambdas;
  double tolerance;
  size_t threads; /* 0: hardware concurrency */
} lvar_diminish_config;

LVAR_API void lvar_diminish_config_default(lvar_diminish_config* cfg);
LVAR_API lvar_status lvar_run_diminish(const lvar_diminish_config* cfg, lvar_report** out);
LVAR_API lvar_status lvar_run_counterexample(const lvar_lambda* seq, double delta, size_t n_max,
                                             size_t resolution, lvar_report** out);
LVAR_API lvar_status lvar_run_convergence(const lvar_function* f, const lvar_lambda* seq,
                                          const size_t* schedule, size_t count,
                                          lvar_report** out);
LVAR_API lvar_status lvar_run_oracle_check(uint64_t seed, size_t cases, size_t threads,
                                           lvar_report** out);
LVAR_API lvar_status lvar_run_continuity(lvar_report** out);

/* 1 when the campaign found no violations and every check passed. */
LVAR_API int lvar_report_ok(const lvar_report* r);
LVAR_API size_t lvar_report_violation_count(const lvar_report* r);
LVAR_API lvar_status lvar_report_json(const lvar_report* r, char** out);
LVAR_API lvar_status lvar_report_csv(const lvar_report* r, char** out);
/* Convergence reports only: n,d_bernstein,d_kantorovich,norm_gap_bernstein,status */
LVAR_API lvar_status lvar_report_table_csv(const lvar_report* r, char** out);
LVAR_API void lvar_report_free(lvar_report* r);

#ifdef __cplusplus
}
#endif

#endif
