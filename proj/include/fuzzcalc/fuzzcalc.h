/*
 * fuzzcalc: fuzzy-number arithmetic and calculus.
 *
 * Plain C interface over opaque handles. Every fallible call returns an
 * fc_status; on failure, fc_last_error() holds a message for the calling
 * thread. Handles returned through out-parameters are owned by the caller and
 * released with the matching *_free function. A NULL grid argument means the
 * default 101-level uniform grid.
 */
#ifndef FUZZCALC_FUZZCALC_H
#define FUZZCALC_FUZZCALC_H

#include <stddef.h>

#if defined(_WIN32)
#  if defined(FUZZCALC_BUILDING_LIBRARY)
#    define FC_API __declspec(dllexport)
#  else
#    define FC_API __declspec(dllimport)
#  endif
#else
#  define FC_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum fc_status {
  FC_OK = 0,
  FC_MALFORMED_TRIPLET,
  FC_NOT_NESTED,
  FC_CROSSED,
  FC_GRID_MISMATCH,
  FC_INVALID_GRID,
  FC_IMPROPER_OPERAND,
  FC_DIVISOR_STRADDLES_ZERO,
  FC_SYNTAX_ERROR,
  FC_UNKNOWN_FUNCTION,
  FC_UNBOUND_VARIABLE,
  FC_NOT_DIFFERENTIABLE,
  FC_NO_LIMIT,
  FC_NOT_SIMPLIFIABLE,
  FC_INVALID_ARGUMENT,
  FC_IO_ERROR,
  FC_OUT_OF_MEMORY,
  FC_INTERNAL_ERROR
} fc_status;

typedef struct fc_grid fc_grid;
typedef struct fc_number fc_number;
typedef struct fc_expr fc_expr;
typedef struct fc_env fc_env;
typedef struct fc_series fc_series;
typedef struct fc_ivp_solution fc_ivp_solution;

FC_API const char* fc_version(void);

/* Stable error name, e.g. "NotNested". */
FC_API const char* fc_status_name(fc_status status);

/* Message of the last failed call on this thread; "" after a success. */
FC_API const char* fc_last_error(void);

/* Frees strings returned by the library. */
FC_API void fc_string_free(char* s);

/* ---- alpha grids ---- */

FC_API fc_status fc_grid_uniform(size_t resolution, fc_grid** out);
FC_API fc_status fc_grid_from_levels(const double* levels, size_t n, fc_grid** out);
FC_API size_t fc_grid_size(const fc_grid* g);
/* Pointer valid while g lives. */
FC_API const double* fc_grid_levels(const fc_grid* g);
FC_API void fc_grid_free(fc_grid* g);

/* ---- fuzzy numbers ---- */

FC_API fc_status fc_number_triangular(double d, double e, double f, const fc_grid* g, fc_number** out);
FC_API fc_status fc_number_singleton(double value, const fc_grid* g, fc_number** out);
FC_API fc_status fc_number_from_alpha_grid(const double* lower, const double* upper, size_t n,
                                           const fc_grid* g, fc_number** out);
/* "T(d,e,f)" or a crisp decimal. */
FC_API fc_status fc_number_parse(const char* text, const fc_grid* g, fc_number** out);
FC_API fc_number* fc_number_clone(const fc_number* a);
FC_API void fc_number_free(fc_number* a);

FC_API size_t fc_number_size(const fc_number* a);
/* Envelope arrays of fc_number_size() entries, valid while a lives. */
FC_API const double* fc_number_lower(const fc_number* a);
FC_API const double* fc_number_upper(const fc_number* a);
FC_API int fc_number_is_proper(const fc_number* a);
FC_API fc_status fc_number_grid(const fc_number* a, fc_grid** out);

FC_API fc_status fc_add(const fc_number* a, const fc_number* b, fc_number** out);
FC_API fc_status fc_mul(const fc_number* a, const fc_number* b, fc_number** out);
FC_API fc_status fc_div(const fc_number* a, const fc_number* b, fc_number** out);
FC_API fc_status fc_gh_difference(const fc_number* a, const fc_number* b, fc_number** out);
FC_API fc_status fc_scalar_mul(double k, const fc_number* a, fc_number** out);
FC_API fc_status fc_pow_int(const fc_number* a, unsigned n, fc_number** out);
FC_API fc_status fc_resample(const fc_number* a, const fc_grid* g, fc_number** out);

FC_API fc_status fc_hausdorff(const fc_number* a, const fc_number* b, double* out);
FC_API fc_status fc_support(const fc_number* a, double* lo, double* hi);
FC_API fc_status fc_core(const fc_number* a, double* lo, double* hi);
/* (support lower, core midpoint, support upper) */
FC_API fc_status fc_triplet(const fc_number* a, double out[3]);

/* ---- alpha-cut CSV ---- */

/* metadata: n_meta strings written as "# " comment lines before the header. */
FC_API fc_status fc_csv_format(const fc_number* a, const char* const* metadata, size_t n_meta, char** out);
FC_API fc_status fc_csv_write(const fc_number* a, const char* path, const char* const* metadata,
                              size_t n_meta);
FC_API fc_status fc_csv_parse(const char* text, fc_number** out);
FC_API fc_status fc_csv_read(const char* path, fc_number** out);

/* ---- expressions ---- */

FC_API fc_status fc_expr_parse(const char* text, const fc_grid* g, fc_expr** out);
/* Coefficient rule in the index variable n, e.g. "n / T(4,5,6)^(n-1)". */
FC_API fc_status fc_expr_parse_rule(const char* text, const fc_grid* g, fc_expr** out);
FC_API fc_status fc_expr_to_string(const fc_expr* e, char** out);
FC_API fc_status fc_expr_differentiate(const fc_expr* e, const char* var, fc_expr** out);
FC_API void fc_expr_free(fc_expr* e);

FC_API fc_status fc_env_new(const fc_grid* g, fc_env** out);
FC_API fc_status fc_env_bind(fc_env* env, const char* name, const fc_number* value);
FC_API void fc_env_free(fc_env* env);

FC_API fc_status fc_eval(const fc_expr* e, const fc_env* env, fc_number** out);

/* ---- mH derivative ---- */

typedef struct fc_limit_schedule {
  double h0; /* <= 0 selects 2^-3 * (1 + |support midpoint of x0|) */
  double shrink;
  int max_iters;
  double tol;
} fc_limit_schedule;

typedef struct fc_derivative_info {
  double gap;
  double h_final;
  int iterations;
  int converged;
} fc_derivative_info;

FC_API void fc_limit_schedule_default(fc_limit_schedule* s);

/* schedule and info may be NULL. Fails with FC_NOT_DIFFERENTIABLE unless the
 * one-sided limits agree within tol. */
FC_API fc_status fc_mh_derivative(const fc_expr* f, const char* var, const fc_number* x0,
                                  const fc_env* env, const fc_limit_schedule* schedule,
                                  fc_number** out, fc_derivative_info* info);

/* *found = 0 when no trial delta keeps the perturbation below eps. */
FC_API fc_status fc_continuity_probe(const fc_expr* f, const char* var, const fc_number* x0,
                                     const fc_env* env, double eps, const double* deltas,
                                     size_t n_deltas, double* delta_out, int* found);

/* ---- power series ---- */

typedef enum fc_radius_mode {
  FC_RADIUS_FOUR_QUOTIENT = 0,
  FC_RADIUS_SYMBOLIC = 1
} fc_radius_mode;

typedef struct fc_radius_info {
  fc_radius_mode mode;
  int infinite;
  double l_lower;
  double l_upper;
  size_t n_used;
} fc_radius_info;

typedef struct fc_ratio_test_result {
  int converges;
  int infinite_radius;
  double l_lower;
  double l_upper;
} fc_ratio_test_result;

FC_API fc_status fc_series_from_coefficients(const fc_number* center, const fc_number* const* coeffs,
                                             size_t n, fc_series** out);
FC_API fc_status fc_series_from_rule(const fc_number* center, const fc_expr* rule, fc_series** out);
FC_API fc_status fc_series_taylor(const fc_expr* f, const char* var, const fc_number* x0, size_t order,
                                  const fc_env* env, fc_series** out);
FC_API void fc_series_free(fc_series* s);

/* Number of explicit coefficients; 0 for rule-based series. */
FC_API size_t fc_series_size(const fc_series* s);
FC_API fc_status fc_series_center(const fc_series* s, fc_number** out);
FC_API fc_status fc_series_coefficient(const fc_series* s, size_t n, fc_number** out);
FC_API fc_status fc_series_partial_sum(const fc_series* s, const fc_number* x, size_t n_terms,
                                       fc_number** out);
/* n_probe is ignored in symbolic mode. info may be NULL. */
FC_API fc_status fc_series_radius(const fc_series* s, fc_radius_mode mode, size_t n_probe,
                                  fc_number** radius, fc_radius_info* info);
FC_API fc_status fc_series_ratio_test(const fc_series* s, size_t n_probe, fc_ratio_test_result* out);
FC_API fc_status fc_convergence_interval(const fc_number* center, const fc_number* radius,
                                         fc_number** lower, fc_number** upper);

/* ---- fuzzy initial value problems ---- */

typedef struct fc_ivp_problem {
  const fc_expr* rhs; /* in x and y */
  const fc_number* x0;
  const fc_number* y0;
  const fc_number* h;
  int order; /* 1..4 */
  int steps;
} fc_ivp_problem;

FC_API fc_status fc_ivp_solve(const fc_ivp_problem* problem, fc_ivp_solution** out);
/* steps + 1 */
FC_API size_t fc_ivp_solution_size(const fc_ivp_solution* s);
FC_API fc_status fc_ivp_solution_point(const fc_ivp_solution* s, size_t i, fc_number** x, fc_number** y);
/* Hausdorff norm of the last Taylor term of step i (1-based); NaN if out of range. */
FC_API double fc_ivp_solution_truncation(const fc_ivp_solution* s, size_t step);
FC_API void fc_ivp_solution_free(fc_ivp_solution* s);

#ifdef __cplusplus
}
#endif

#endif /* FUZZCALC_FUZZCALC_H */
