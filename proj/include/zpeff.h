/*
 * zpeff — Zipf-Pareto efficiency library.
 *
 * C interface to the efficiency functional, its entropy companions, the
 * Pareto/Zipf model algebra, the perturbation-stability harness, the
 * constrained maximizer, and corpus/sample ingestion.
 *
 * Conventions:
 *   - Every fallible call returns a zpeff_status; results travel through out
 *     parameters. ZPEFF_OK is zero.
 *   - zpeff_last_error() returns a thread-local message for the most recent
 *     failure on the calling thread.
 *   - Objects behind opaque handles are created and destroyed by the library;
 *     strings and buffers returned through out-pointers must be released with
 *     zpeff_string_free / zpeff_buffer_free.
 *   - All functions are thread-safe; handles are immutable after creation.
 */

#ifndef ZPEFF_H
#define ZPEFF_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define ZPEFF_API __declspec(dllexport)
#else
#define ZPEFF_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum zpeff_status {
  ZPEFF_OK = 0,
  ZPEFF_ERR_INVALID_ARGUMENT = 1, /* null pointer or malformed call */
  ZPEFF_ERR_DOMAIN = 2,           /* parameter outside its mathematical domain */
  ZPEFF_ERR_VALIDATION = 3,       /* object invariant violated */
  ZPEFF_ERR_DIVERGENCE = 4,       /* requested quantity diverges */
  ZPEFF_ERR_BRACKET = 5,          /* root bracket has no sign change */
  ZPEFF_ERR_CONVERGENCE = 6,      /* iteration budget exhausted */
  ZPEFF_ERR_FEASIBILITY = 7,      /* constraint set is empty */
  ZPEFF_ERR_INSUFFICIENT_DATA = 8,
  ZPEFF_ERR_EMPTY_INPUT = 9,
  ZPEFF_ERR_DEGENERATE = 10,
  ZPEFF_ERR_PARSE = 11,
  ZPEFF_ERR_INTERNAL = 12
} zpeff_status;

ZPEFF_API const char* zpeff_status_name(zpeff_status s);
ZPEFF_API const char* zpeff_last_error(void);

ZPEFF_API void zpeff_string_free(char* s);
ZPEFF_API void zpeff_buffer_free(double* p);

/* ------------------------------------------------------------------ */
/* Distributions                                                       */
/* ------------------------------------------------------------------ */

typedef struct zpeff_dist zpeff_dist;

/* probs must be non-negative and sum to 1 within 1e-12. */
ZPEFF_API zpeff_status zpeff_dist_create(const double* probs, size_t n, zpeff_dist** out);
ZPEFF_API zpeff_status zpeff_dist_create_with_values(const double* probs, const double* values,
                                                     size_t n, zpeff_dist** out);
/* Explicit renormalization of non-negative weights. */
ZPEFF_API zpeff_status zpeff_dist_create_normalized(const double* weights, size_t n,
                                                    zpeff_dist** out);
ZPEFF_API size_t zpeff_dist_size(const zpeff_dist* d);
ZPEFF_API zpeff_status zpeff_dist_prob(const zpeff_dist* d, size_t i, double* out);
ZPEFF_API void zpeff_dist_destroy(zpeff_dist* d);

/* ------------------------------------------------------------------ */
/* Efficiency measures                                                 */
/* ------------------------------------------------------------------ */

/* Optional quadrature controls; pass NULL for the defaults
 * (abs_tol 1e-10, rel_tol 1e-9, max_intervals 4000). */
typedef struct zpeff_quad_opts {
  double abs_tol;
  double rel_tol;
  int max_intervals;
} zpeff_quad_opts;

typedef double (*zpeff_density_fn)(double x, void* ctx);
typedef double (*zpeff_fn)(double x, void* ctx);

ZPEFF_API zpeff_status zpeff_engine_efficiency(double work, double heat, double* out);
ZPEFF_API zpeff_status zpeff_compose_efficiency(double eta1, double eta2, double a, double* out);
ZPEFF_API zpeff_status zpeff_per_state_efficiency(double p, double a, double* out);
ZPEFF_API zpeff_status zpeff_discrete_efficiency(const zpeff_dist* d, double a, int strict_range,
                                                 double* out);
/* upper may be +infinity; the density must integrate to 1 on the support. */
ZPEFF_API zpeff_status zpeff_continuous_efficiency(zpeff_density_fn density, void* ctx,
                                                   double lower, double upper, double a,
                                                   const zpeff_quad_opts* quad, double* out);
ZPEFF_API zpeff_status zpeff_continuous_efficiency_pareto(double x_min, double beta, double a,
                                                          const zpeff_quad_opts* quad,
                                                          double* out);

/* ------------------------------------------------------------------ */
/* Entropies                                                           */
/* ------------------------------------------------------------------ */

ZPEFF_API zpeff_status zpeff_shannon_discrete(const zpeff_dist* d, double* out);
ZPEFF_API zpeff_status zpeff_shannon_pareto(double beta, double* out);
ZPEFF_API zpeff_status zpeff_varentropy_discrete(const zpeff_dist* d, double b, double* out);
ZPEFF_API zpeff_status zpeff_varentropy_bs_pareto(double beta, double* out);
/* (z^{-b} * integral rho^{1-b} - c) / (1 - b) */
ZPEFF_API zpeff_status zpeff_varentropy_power_numeric(zpeff_density_fn density, void* ctx,
                                                      double lower, double upper, double b,
                                                      double z, double c,
                                                      const zpeff_quad_opts* quad, double* out);
ZPEFF_API zpeff_status zpeff_varentropy_power_pareto(double beta, double* out);

/* ------------------------------------------------------------------ */
/* Pareto / Zipf models                                                */
/* ------------------------------------------------------------------ */

ZPEFF_API zpeff_status zpeff_beta_from_a(double a, double* out);
ZPEFF_API zpeff_status zpeff_a_from_beta(double beta, double* out);
ZPEFF_API zpeff_status zpeff_pareto_ccdf(double x_min, double beta, double x, double* out);
ZPEFF_API zpeff_status zpeff_pareto_pdf(double x_min, double beta, double x, double* out);
/* Fills out[0..n-1] with inverse-CDF samples; deterministic per seed. */
ZPEFF_API zpeff_status zpeff_pareto_sample(double x_min, double beta, size_t n, uint64_t seed,
                                           double* out);
ZPEFF_API zpeff_status zpeff_zp_efficiency(double beta, double* out);
ZPEFF_API zpeff_status zpeff_gini_from_beta(double beta, double* out);
/* Fills out[0..ranks-1] with x1 / r^alpha for r = 1..ranks. */
ZPEFF_API zpeff_status zpeff_zipf_curve(double x1, double alpha, size_t ranks, double* out);
ZPEFF_API zpeff_status zpeff_solve_bracketed_root(zpeff_fn f, void* ctx, double lo, double hi,
                                                  double tol, double* out);
ZPEFF_API zpeff_status zpeff_zero_efficiency_threshold(double tol, double* out);
ZPEFF_API zpeff_status zpeff_zero_shannon_threshold(double tol, double* out);
/* JSON round-trip of model parameters: {"beta": ..., "x_min": ...}. */
ZPEFF_API zpeff_status zpeff_pareto_to_json(double x_min, double beta, char** out);
ZPEFF_API zpeff_status zpeff_pareto_from_json(const char* json, double* x_min, double* beta);

/* ------------------------------------------------------------------ */
/* Stability                                                           */
/* ------------------------------------------------------------------ */

typedef struct zpeff_stability_report zpeff_stability_report;

typedef struct zpeff_stability_cell {
  uint64_t n_states;
  double delta;
  double max_ratio;
  double lemma1_bound;
  double m_delta_bound;
  int pass;
} zpeff_stability_cell;

ZPEFF_API zpeff_status zpeff_efficiency_sup(uint64_t n_states, double a, double* out);
/* Left/right side of the perturbation inequality
 * sum |p^{1-a} - q^{1-a}| <= N^a ||p-q||_1^{1-a}. */
ZPEFF_API zpeff_status zpeff_perturbation_gap(const zpeff_dist* p, const zpeff_dist* q, double a,
                                              double* lhs, double* rhs);
ZPEFF_API zpeff_status zpeff_stability_bound_constant(double a, double* out);
ZPEFF_API zpeff_status zpeff_stability_ratio(const zpeff_dist* p, const zpeff_dist* q, double a,
                                             double* out);
ZPEFF_API zpeff_status zpeff_stability_run(double a, const uint64_t* n_values, size_t n_count,
                                           double delta, size_t trials, uint64_t seed,
                                           zpeff_stability_report** out);
ZPEFF_API size_t zpeff_stability_report_cell_count(const zpeff_stability_report* r);
ZPEFF_API zpeff_status zpeff_stability_report_cell(const zpeff_stability_report* r, size_t i,
                                                   zpeff_stability_cell* out);
ZPEFF_API int zpeff_stability_report_passed(const zpeff_stability_report* r);
ZPEFF_API zpeff_status zpeff_stability_report_to_csv(const zpeff_stability_report* r, char** out);
ZPEFF_API zpeff_status zpeff_stability_report_to_json(const zpeff_stability_report* r, char** out);
ZPEFF_API void zpeff_stability_report_destroy(zpeff_stability_report* r);

/* ------------------------------------------------------------------ */
/* Constrained maximization                                            */
/* ------------------------------------------------------------------ */

typedef struct zpeff_solution zpeff_solution;

/* Maximize the discrete efficiency over strictly increasing positive levels
 * subject to normalization and a pinned mean. */
ZPEFF_API zpeff_status zpeff_solve_fixed_mean(const double* values, size_t n, double a,
                                              double mean, double tol, zpeff_solution** out);
/* Same stationarity system with the linear achievement term entering through
 * an explicit positive multiplier; only normalization is enforced. */
ZPEFF_API zpeff_status zpeff_solve_multiplier(const double* values, size_t n, double a,
                                              double multiplier, double tol,
                                              zpeff_solution** out);
ZPEFF_API size_t zpeff_solution_size(const zpeff_solution* s);
ZPEFF_API zpeff_status zpeff_solution_prob(const zpeff_solution* s, size_t i, double* out);
ZPEFF_API zpeff_status zpeff_solution_value(const zpeff_solution* s, size_t i, double* out);
ZPEFF_API double zpeff_solution_fitted_exponent(const zpeff_solution* s);
ZPEFF_API double zpeff_solution_residual(const zpeff_solution* s);
ZPEFF_API double zpeff_solution_shift(const zpeff_solution* s);
ZPEFF_API zpeff_status zpeff_solution_multipliers(const zpeff_solution* s, double* constant,
                                                  double* linear);
/* Tail exponent of the solution's discrete CCDF on log-log axes. */
ZPEFF_API zpeff_status zpeff_solution_ccdf_exponent(const zpeff_solution* s, double* out);
ZPEFF_API zpeff_status zpeff_solution_to_json(const zpeff_solution* s, char** out);
ZPEFF_API zpeff_status zpeff_solution_to_csv(const zpeff_solution* s, char** out);
ZPEFF_API void zpeff_solution_destroy(zpeff_solution* s);

/* ------------------------------------------------------------------ */
/* Ingestion and fitting                                               */
/* ------------------------------------------------------------------ */

typedef struct zpeff_rank_table zpeff_rank_table;

/* UTF-8 text in, case-folded tokens split on non-alphanumeric boundaries. */
ZPEFF_API zpeff_status zpeff_tokenize(const char* text, size_t len, zpeff_rank_table** out);
/* "token,count" lines; a leading header line is optional. */
ZPEFF_API zpeff_status zpeff_rank_table_from_counts_csv(const char* text, size_t len,
                                                        zpeff_rank_table** out);
ZPEFF_API size_t zpeff_rank_table_size(const zpeff_rank_table* t);
ZPEFF_API double zpeff_rank_table_total(const zpeff_rank_table* t);
ZPEFF_API zpeff_status zpeff_rank_table_entry(const zpeff_rank_table* t, size_t i,
                                              const char** token, double* frequency);
ZPEFF_API zpeff_status zpeff_rank_table_to_csv(const zpeff_rank_table* t, char** out);
ZPEFF_API zpeff_status zpeff_rank_table_distribution(const zpeff_rank_table* t, zpeff_dist** out);
ZPEFF_API void zpeff_rank_table_destroy(zpeff_rank_table* t);

/* Least-squares ln(frequency)-on-ln(rank) fit over [window_lo, window_hi]
 * (pass 0,0 for the default window 5..max(50, n/10)). window_out, when
 * non-null, receives the fitted window {lo, hi}. */
ZPEFF_API zpeff_status zpeff_fit_zipf(const zpeff_rank_table* t, size_t window_lo,
                                      size_t window_hi, double* alpha_hat, double* x1_hat,
                                      double* r_squared, size_t* window_out);
/* Maximum-likelihood tail index; pass x_min <= 0 to use the sample minimum.
 * std_err receives beta_hat/sqrt(n). */
ZPEFF_API zpeff_status zpeff_fit_pareto_hill(const double* values, size_t n, double x_min,
                                             double* beta_hat, double* std_err,
                                             double* x_min_used);
ZPEFF_API zpeff_status zpeff_empirical_gini(const double* values, size_t n, double* out);
/* Share of the total held by the top ceil(fraction*n) samples. */
ZPEFF_API zpeff_status zpeff_top_share(const double* values, size_t n, double fraction,
                                       double* out);
/* Numeric sample file: one value per line, '#' comments. The parsed values
 * are returned through *out (release with zpeff_buffer_free). */
ZPEFF_API zpeff_status zpeff_parse_samples(const char* text, size_t len, double** out,
                                           size_t* n_out);

#ifdef __cplusplus
}
#endif

#endif /* ZPEFF_H */
