#include "zpeff.h"

#include <cmath>
#include <cstring>
#include <limits>
#include <new>
#include <string>
#include <vector>

#include "zpeff/distribution.hpp"
#include "zpeff/entropy.hpp"
#include "zpeff/errors.hpp"
#include "zpeff/ingest.hpp"
#include "zpeff/measures.hpp"
#include "zpeff/pareto.hpp"
#include "zpeff/quadrature.hpp"
#include "zpeff/roots.hpp"
#include "zpeff/stability.hpp"
#include "zpeff/variational.hpp"

struct zpeff_dist {
  zpeff::Distribution impl;
};
struct zpeff_stability_report {
  zpeff::StabilityReport impl;
};
struct zpeff_solution {
  zpeff::VariationalSolution impl;
};
struct zpeff_rank_table {
  zpeff::RankFrequency impl;
};

namespace {

thread_local std::string g_last_error;

zpeff_status status_of(zpeff::errc code) {
  switch (code) {
    case zpeff::errc::domain: return ZPEFF_ERR_DOMAIN;
    case zpeff::errc::validation: return ZPEFF_ERR_VALIDATION;
    case zpeff::errc::divergence: return ZPEFF_ERR_DIVERGENCE;
    case zpeff::errc::bracket: return ZPEFF_ERR_BRACKET;
    case zpeff::errc::convergence: return ZPEFF_ERR_CONVERGENCE;
    case zpeff::errc::feasibility: return ZPEFF_ERR_FEASIBILITY;
    case zpeff::errc::insufficient_data: return ZPEFF_ERR_INSUFFICIENT_DATA;
    case zpeff::errc::empty_input: return ZPEFF_ERR_EMPTY_INPUT;
    case zpeff::errc::degenerate: return ZPEFF_ERR_DEGENERATE;
    case zpeff::errc::parse: return ZPEFF_ERR_PARSE;
  }
  return ZPEFF_ERR_INTERNAL;
}

template <typename Fn>
zpeff_status guarded(Fn&& fn) {
  try {
    fn();
    return ZPEFF_OK;
  } catch (const zpeff::error& e) {
    g_last_error = e.what();
    return status_of(e.code());
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
    return ZPEFF_ERR_INTERNAL;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return ZPEFF_ERR_INTERNAL;
  }
}

zpeff_status invalid_argument(const char* what) {
  g_last_error = what;
  return ZPEFF_ERR_INVALID_ARGUMENT;
}

char* copy_string(const std::string& s) {
  char* out = new char[s.size() + 1];
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

zpeff::QuadratureConfig quad_config(const zpeff_quad_opts* quad) {
  zpeff::QuadratureConfig cfg;
  if (quad) {
    cfg.abs_tol = quad->abs_tol;
    cfg.rel_tol = quad->rel_tol;
    cfg.max_intervals = quad->max_intervals;
  }
  return cfg;
}

}  // namespace

extern "C" {

const char* zpeff_status_name(zpeff_status s) {
  switch (s) {
    case ZPEFF_OK: return "ok";
    case ZPEFF_ERR_INVALID_ARGUMENT: return "invalid argument";
    case ZPEFF_ERR_DOMAIN: return "domain error";
    case ZPEFF_ERR_VALIDATION: return "validation error";
    case ZPEFF_ERR_DIVERGENCE: return "divergence";
    case ZPEFF_ERR_BRACKET: return "bracketing error";
    case ZPEFF_ERR_CONVERGENCE: return "convergence failure";
    case ZPEFF_ERR_FEASIBILITY: return "infeasible constraints";
    case ZPEFF_ERR_INSUFFICIENT_DATA: return "insufficient data";
    case ZPEFF_ERR_EMPTY_INPUT: return "empty input";
    case ZPEFF_ERR_DEGENERATE: return "degenerate configuration";
    case ZPEFF_ERR_PARSE: return "parse error";
    case ZPEFF_ERR_INTERNAL: return "internal error";
  }
  return "unknown";
}

const char* zpeff_last_error(void) { return g_last_error.c_str(); }

void zpeff_string_free(char* s) { delete[] s; }
void zpeff_buffer_free(double* p) { delete[] p; }

/* ---------------- distributions ---------------- */

zpeff_status zpeff_dist_create(const double* probs, size_t n, zpeff_dist** out) {
  if (!probs || !out) return invalid_argument("null pointer");
  return guarded([&] {
    *out = new zpeff_dist{zpeff::Distribution(std::vector<double>(probs, probs + n))};
  });
}

zpeff_status zpeff_dist_create_with_values(const double* probs, const double* values, size_t n,
                                           zpeff_dist** out) {
  if (!probs || !values || !out) return invalid_argument("null pointer");
  return guarded([&] {
    *out = new zpeff_dist{zpeff::Distribution(std::vector<double>(probs, probs + n),
                                              std::vector<double>(values, values + n))};
  });
}

zpeff_status zpeff_dist_create_normalized(const double* weights, size_t n, zpeff_dist** out) {
  if (!weights || !out) return invalid_argument("null pointer");
  return guarded([&] {
    *out = new zpeff_dist{zpeff::Distribution::normalized({weights, n})};
  });
}

size_t zpeff_dist_size(const zpeff_dist* d) { return d ? d->impl.size() : 0; }

zpeff_status zpeff_dist_prob(const zpeff_dist* d, size_t i, double* out) {
  if (!d || !out) return invalid_argument("null pointer");
  return guarded([&] { *out = d->impl.prob(i); });
}

void zpeff_dist_destroy(zpeff_dist* d) { delete d; }

/* ---------------- measures ---------------- */

zpeff_status zpeff_engine_efficiency(double work, double heat, double* out) {
  if (!out) return invalid_argument("null pointer");
  return guarded([&] { *out = zpeff::engine_efficiency({work, heat}); });
}

zpeff_status zpeff_compose_efficiency(double eta1, double eta2, double a, double* out) {
  if (!out) return invalid_argument("null pointer");
  return guarded([&] { *out = zpeff::compose_efficiency(eta1, eta2, a); });
}

zpeff_status zpeff_per_state_efficiency(double p, double a, double* out) {
  if (!out) return invalid_argument("null pointer");
  return guarded([&] { *out = zpeff::per_state_efficiency(p, a); });
}

zpeff_status zpeff_discrete_efficiency(const zpeff_dist* d, double a, int strict_range,
                                       double* out) {
  if (!d || !out) return invalid_argument("null pointer");
  return guarded([&] {
    *out = zpeff::discrete_efficiency(d->impl, zpeff::EfficiencyParams{a, strict_range != 0});
  });
}

zpeff_status zpeff_continuous_efficiency(zpeff_density_fn density, void* ctx, double lower,
                                         double upper, double a, const zpeff_quad_opts* quad,
                                         double* out) {
  if (!density || !out) return invalid_argument("null pointer");
  return guarded([&] {
    zpeff::PdfSpec pdf{[density, ctx](double x) { return density(x, ctx); }, lower, upper};
    *out = zpeff::continuous_efficiency(pdf, a, quad_config(quad));
  });
}

zpeff_status zpeff_continuous_efficiency_pareto(double x_min, double beta, double a,
                                                const zpeff_quad_opts* quad, double* out) {
  if (!out) return invalid_argument("null pointer");
  return guarded([&] {
    *out = zpeff::continuous_efficiency(zpeff::pareto_density({x_min, beta}), a,
                                        quad_config(quad));
  });
}

/* ---------------- entropies ---------------- */

zpeff_status zpeff_shannon_discrete(const zpeff_dist* d, double* out) {
  if (!d || !out) return invalid_argument("null pointer");
  return guarded([&] { *out = zpeff::shannon_discrete(d->impl); });
}

zpeff_status zpeff_shannon_pareto(double beta, double* out) {
  if (!out) return invalid_argument("null pointer");
  return guarded([&] { *out = zpeff::shannon_pareto(beta); });
}

zpeff_status zpeff_varentropy_discrete(const zpeff_dist* d, double b, double* out) {
  if (!d || !out) return invalid_argument("null pointer");
  return guarded([&] { *out = zpeff::varentropy_discrete(d->impl, b); });
}

zpeff_status zpeff_varentropy_bs_pareto(double beta, double* out) {
  if (!out) return invalid_argument("null pointer");
  return guarded([&] { *out = zpeff::varentropy_bs_pareto(beta); });
}

zpeff_status zpeff_varentropy_power_numeric(zpeff_density_fn density, void* ctx, double lower,
                                            double upper, double b, double z, double c,
                                            const zpeff_quad_opts* quad, double* out) {
  if (!density || !out) return invalid_argument("null pointer");
  return guarded([&] {
    zpeff::PdfSpec pdf{[density, ctx](double x) { return density(x, ctx); }, lower, upper};
    zpeff::VarentropyConfig cfg;
    cfg.b = b;
    cfg.z = z;
    cfg.c = c;
    *out = zpeff::varentropy_power_numeric(pdf, cfg, quad_config(quad));
  });
}

zpeff_status zpeff_varentropy_power_pareto(double beta, double* out) {
  if (!out) return invalid_argument("null pointer");
  return guarded([&] { *out = zpeff::varentropy_power_pareto(beta); });
}

/* ---------------- pareto / zipf ---------------- */

zpeff_status zpeff_beta_from_a(double a, double* out) {
  if (!out) return invalid_argument("null pointer");
  return guarded([&] { *out = zpeff::beta_from_a(a); });
}

zpeff_status zpeff_a_from_beta(double beta, double* out) {
  if (!out) return invalid_argument("null pointer");
  return guarded([&] { *out = zpeff::a_from_beta(beta); });
}

zpeff_status zpeff_pareto_ccdf(double x_min, double beta, double x, double* out) {
  if (!out) return invalid_argument("null pointer");
  return guarded([&] { *out = zpeff::pareto_ccdf({x_min, beta}, x); });
}

zpeff_status zpeff_pareto_pdf(double x_min, double beta, double x, double* out) {
  if (!out) return invalid_argument("null pointer");
  return guarded([&] { *out = zpeff::pareto_pdf({x_min, beta}, x); });
}

zpeff_status zpeff_pareto_sample(double x_min, double beta, size_t n, uint64_t seed,
                                 double* out) {
  if (!out) return invalid_argument("null pointer");
  return guarded([&] {
    const auto samples = zpeff::pareto_sample({x_min, beta}, n, seed);
    std::memcpy(out, samples.data(), samples.size() * sizeof(double));
  });
}

zpeff_status zpeff_zp_efficiency(double beta, double* out) {
  if (!out) return invalid_argument("null pointer");
  return guarded([&] { *out = zpeff::zp_efficiency(beta); });
}

zpeff_status zpeff_gini_from_beta(double beta, double* out) {
  if (!out) return invalid_argument("null pointer");
  return guarded([&] { *out = zpeff::gini_from_beta(beta); });
}

zpeff_status zpeff_zipf_curve(double x1, double alpha, size_t ranks, double* out) {
  if (!out) return invalid_argument("null pointer");
  return guarded([&] {
    const auto curve = zpeff::zipf_curve({x1, alpha}, ranks);
    for (size_t i = 0; i < curve.size(); ++i) out[i] = curve[i].second;
  });
}

zpeff_status zpeff_solve_bracketed_root(zpeff_fn f, void* ctx, double lo, double hi, double tol,
                                        double* out) {
  if (!f || !out) return invalid_argument("null pointer");
  return guarded([&] {
    *out = zpeff::solve_bracketed_root([f, ctx](double x) { return f(x, ctx); }, lo, hi, tol)
               .root;
  });
}

zpeff_status zpeff_zero_efficiency_threshold(double tol, double* out) {
  if (!out) return invalid_argument("null pointer");
  return guarded([&] { *out = zpeff::zero_efficiency_threshold(tol); });
}

zpeff_status zpeff_zero_shannon_threshold(double tol, double* out) {
  if (!out) return invalid_argument("null pointer");
  return guarded([&] { *out = zpeff::zero_shannon_threshold(tol); });
}

zpeff_status zpeff_pareto_to_json(double x_min, double beta, char** out) {
  if (!out) return invalid_argument("null pointer");
  return guarded([&] { *out = copy_string(zpeff::pareto_to_json({x_min, beta})); });
}

zpeff_status zpeff_pareto_from_json(const char* json, double* x_min, double* beta) {
  if (!json || !x_min || !beta) return invalid_argument("null pointer");
  return guarded([&] {
    const zpeff::ParetoModel m = zpeff::pareto_from_json(json);
    *x_min = m.x_min;
    *beta = m.beta;
  });
}

/* ---------------- stability ---------------- */

zpeff_status zpeff_efficiency_sup(uint64_t n_states, double a, double* out) {
  if (!out) return invalid_argument("null pointer");
  return guarded([&] { *out = zpeff::efficiency_sup(static_cast<size_t>(n_states), a); });
}

zpeff_status zpeff_perturbation_gap(const zpeff_dist* p, const zpeff_dist* q, double a,
                                    double* lhs, double* rhs) {
  if (!p || !q || !lhs || !rhs) return invalid_argument("null pointer");
  return guarded([&] {
    const auto [l, r] = zpeff::perturbation_gap(p->impl, q->impl, a);
    *lhs = l;
    *rhs = r;
  });
}

zpeff_status zpeff_stability_bound_constant(double a, double* out) {
  if (!out) return invalid_argument("null pointer");
  return guarded([&] { *out = zpeff::stability_bound_constant(a); });
}

zpeff_status zpeff_stability_ratio(const zpeff_dist* p, const zpeff_dist* q, double a,
                                   double* out) {
  if (!p || !q || !out) return invalid_argument("null pointer");
  return guarded([&] { *out = zpeff::stability_ratio(p->impl, q->impl, a); });
}

zpeff_status zpeff_stability_run(double a, const uint64_t* n_values, size_t n_count, double delta,
                                 size_t trials, uint64_t seed, zpeff_stability_report** out) {
  if (!n_values || !out) return invalid_argument("null pointer");
  return guarded([&] {
    zpeff::StabilityTrialConfig cfg;
    cfg.a = a;
    cfg.n_values.assign(n_values, n_values + n_count);
    cfg.delta = delta;
    cfg.trials = trials;
    cfg.seed = seed;
    *out = new zpeff_stability_report{zpeff::run_stability_trials(cfg)};
  });
}

size_t zpeff_stability_report_cell_count(const zpeff_stability_report* r) {
  return r ? r->impl.cells.size() : 0;
}

zpeff_status zpeff_stability_report_cell(const zpeff_stability_report* r, size_t i,
                                         zpeff_stability_cell* out) {
  if (!r || !out) return invalid_argument("null pointer");
  if (i >= r->impl.cells.size()) return invalid_argument("cell index out of range");
  const auto& c = r->impl.cells[i];
  out->n_states = c.n_states;
  out->delta = c.delta;
  out->max_ratio = c.max_ratio;
  out->lemma1_bound = c.lemma1_bound;
  out->m_delta_bound = c.m_delta_bound;
  out->pass = c.pass ? 1 : 0;
  return ZPEFF_OK;
}

int zpeff_stability_report_passed(const zpeff_stability_report* r) {
  return r && r->impl.passed ? 1 : 0;
}

zpeff_status zpeff_stability_report_to_csv(const zpeff_stability_report* r, char** out) {
  if (!r || !out) return invalid_argument("null pointer");
  return guarded([&] { *out = copy_string(r->impl.to_csv()); });
}

zpeff_status zpeff_stability_report_to_json(const zpeff_stability_report* r, char** out) {
  if (!r || !out) return invalid_argument("null pointer");
  return guarded([&] { *out = copy_string(r->impl.to_json()); });
}

void zpeff_stability_report_destroy(zpeff_stability_report* r) { delete r; }

/* ---------------- constrained maximization ---------------- */

zpeff_status zpeff_solve_fixed_mean(const double* values, size_t n, double a, double mean,
                                    double tol, zpeff_solution** out) {
  if (!values || !out) return invalid_argument("null pointer");
  return guarded([&] {
    zpeff::VariationalProblem prob;
    prob.values.assign(values, values + n);
    prob.a = a;
    prob.mean_target = mean;
    *out = new zpeff_solution{zpeff::solve_stationary(prob, tol)};
  });
}

zpeff_status zpeff_solve_multiplier(const double* values, size_t n, double a, double multiplier,
                                    double tol, zpeff_solution** out) {
  if (!values || !out) return invalid_argument("null pointer");
  return guarded([&] {
    zpeff::VariationalProblem prob;
    prob.values.assign(values, values + n);
    prob.a = a;
    prob.multiplier = multiplier;
    *out = new zpeff_solution{zpeff::solve_stationary(prob, tol)};
  });
}

size_t zpeff_solution_size(const zpeff_solution* s) { return s ? s->impl.distribution.size() : 0; }

zpeff_status zpeff_solution_prob(const zpeff_solution* s, size_t i, double* out) {
  if (!s || !out) return invalid_argument("null pointer");
  return guarded([&] { *out = s->impl.distribution.prob(i); });
}

zpeff_status zpeff_solution_value(const zpeff_solution* s, size_t i, double* out) {
  if (!s || !out) return invalid_argument("null pointer");
  return guarded([&] {
    const auto vals = s->impl.distribution.values();
    if (i >= vals.size()) zpeff::fail(zpeff::errc::validation, "index out of range");
    *out = vals[i];
  });
}

double zpeff_solution_fitted_exponent(const zpeff_solution* s) {
  return s ? s->impl.fitted_exponent : std::numeric_limits<double>::quiet_NaN();
}

double zpeff_solution_residual(const zpeff_solution* s) {
  return s ? s->impl.residual : std::numeric_limits<double>::quiet_NaN();
}

double zpeff_solution_shift(const zpeff_solution* s) {
  return s ? s->impl.shift : std::numeric_limits<double>::quiet_NaN();
}

zpeff_status zpeff_solution_multipliers(const zpeff_solution* s, double* constant,
                                        double* linear) {
  if (!s || !constant || !linear) return invalid_argument("null pointer");
  *constant = s->impl.multiplier_const;
  *linear = s->impl.multiplier_linear;
  return ZPEFF_OK;
}

zpeff_status zpeff_solution_ccdf_exponent(const zpeff_solution* s, double* out) {
  if (!s || !out) return invalid_argument("null pointer");
  return guarded([&] { *out = zpeff::ccdf_tail_exponent(s->impl); });
}

zpeff_status zpeff_solution_to_json(const zpeff_solution* s, char** out) {
  if (!s || !out) return invalid_argument("null pointer");
  return guarded([&] { *out = copy_string(s->impl.to_json()); });
}

zpeff_status zpeff_solution_to_csv(const zpeff_solution* s, char** out) {
  if (!s || !out) return invalid_argument("null pointer");
  return guarded([&] { *out = copy_string(s->impl.to_csv()); });
}

void zpeff_solution_destroy(zpeff_solution* s) { delete s; }

/* ---------------- ingestion ---------------- */

zpeff_status zpeff_tokenize(const char* text, size_t len, zpeff_rank_table** out) {
  if (!text || !out) return invalid_argument("null pointer");
  return guarded([&] {
    *out = new zpeff_rank_table{zpeff::tokenize_corpus(std::string_view(text, len))};
  });
}

zpeff_status zpeff_rank_table_from_counts_csv(const char* text, size_t len,
                                              zpeff_rank_table** out) {
  if (!text || !out) return invalid_argument("null pointer");
  return guarded([&] {
    *out = new zpeff_rank_table{
        zpeff::RankFrequency::from_counts_csv(std::string_view(text, len))};
  });
}

size_t zpeff_rank_table_size(const zpeff_rank_table* t) { return t ? t->impl.size() : 0; }

double zpeff_rank_table_total(const zpeff_rank_table* t) { return t ? t->impl.total() : 0.0; }

zpeff_status zpeff_rank_table_entry(const zpeff_rank_table* t, size_t i, const char** token,
                                    double* frequency) {
  if (!t || !token || !frequency) return invalid_argument("null pointer");
  if (i >= t->impl.size()) return invalid_argument("rank index out of range");
  const auto& e = t->impl.entries()[i];
  *token = e.token.c_str();
  *frequency = e.frequency;
  return ZPEFF_OK;
}

zpeff_status zpeff_rank_table_to_csv(const zpeff_rank_table* t, char** out) {
  if (!t || !out) return invalid_argument("null pointer");
  return guarded([&] { *out = copy_string(t->impl.to_csv()); });
}

zpeff_status zpeff_rank_table_distribution(const zpeff_rank_table* t, zpeff_dist** out) {
  if (!t || !out) return invalid_argument("null pointer");
  return guarded([&] { *out = new zpeff_dist{zpeff::empirical_distribution(t->impl)}; });
}

void zpeff_rank_table_destroy(zpeff_rank_table* t) { delete t; }

zpeff_status zpeff_fit_zipf(const zpeff_rank_table* t, size_t window_lo, size_t window_hi,
                            double* alpha_hat, double* x1_hat, double* r_squared,
                            size_t* window_out) {
  if (!t || !alpha_hat || !x1_hat || !r_squared) return invalid_argument("null pointer");
  return guarded([&] {
    const zpeff::ZipfFit fit = zpeff::fit_zipf(t->impl, window_lo, window_hi);
    *alpha_hat = fit.alpha_hat;
    *x1_hat = fit.x1_hat;
    *r_squared = fit.r_squared;
    if (window_out) {
      window_out[0] = fit.window_lo;
      window_out[1] = fit.window_hi;
    }
  });
}

zpeff_status zpeff_fit_pareto_hill(const double* values, size_t n, double x_min, double* beta_hat,
                                   double* std_err, double* x_min_used) {
  if (!values || !beta_hat || !std_err) return invalid_argument("null pointer");
  return guarded([&] {
    std::optional<double> declared;
    if (x_min > 0.0) declared = x_min;
    const zpeff::HillFit fit =
        zpeff::fit_pareto_hill(zpeff::SampleSet(std::vector<double>(values, values + n),
                                                declared));
    *beta_hat = fit.beta_hat;
    *std_err = fit.std_err;
    if (x_min_used) *x_min_used = fit.x_min;
  });
}

zpeff_status zpeff_empirical_gini(const double* values, size_t n, double* out) {
  if (!values || !out) return invalid_argument("null pointer");
  return guarded([&] {
    *out = zpeff::empirical_gini(zpeff::SampleSet(std::vector<double>(values, values + n)));
  });
}

zpeff_status zpeff_top_share(const double* values, size_t n, double fraction, double* out) {
  if (!values || !out) return invalid_argument("null pointer");
  return guarded([&] {
    *out = zpeff::top_share(zpeff::SampleSet(std::vector<double>(values, values + n)), fraction);
  });
}

zpeff_status zpeff_parse_samples(const char* text, size_t len, double** out, size_t* n_out) {
  if (!text || !out || !n_out) return invalid_argument("null pointer");
  return guarded([&] {
    const auto values = zpeff::parse_numeric_lines(std::string_view(text, len));
    double* buf = new double[values.size()];
    std::memcpy(buf, values.data(), values.size() * sizeof(double));
    *out = buf;
    *n_out = values.size();
  });
}

}  // extern "C"
