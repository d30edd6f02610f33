#include "zpeff/pareto.hpp"

#include <cmath>
#include <limits>
#include <string>

#include <json.hpp>

#include "zpeff/errors.hpp"
#include "zpeff/rng.hpp"
#include "zpeff/roots.hpp"

namespace zpeff {

ParetoModel::ParetoModel(double x_min_, double beta_) : x_min(x_min_), beta(beta_) {
  if (!std::isfinite(x_min) || x_min <= 0.0)
    fail(errc::validation, "scale parameter must be positive");
  if (!std::isfinite(beta) || beta <= 0.0)
    fail(errc::validation, "tail index must be positive");
}

ZipfModel::ZipfModel(double x1_, double alpha_) : x1(x1_), alpha(alpha_) {
  if (!std::isfinite(x1) || x1 <= 0.0)
    fail(errc::validation, "top-rank value must be positive");
  if (!std::isfinite(alpha) || alpha <= 0.0)
    fail(errc::validation, "rank exponent must be positive");
}

double beta_from_a(double a) {
  if (!std::isfinite(a) || a <= 0.0 || a >= 1.0)
    fail(errc::domain, "loss coefficient must lie in (0, 1)");
  return 1.0 / a - 1.0;
}

double a_from_beta(double beta) {
  if (!std::isfinite(beta) || beta <= 0.0)
    fail(errc::domain, "tail index must be positive");
  return 1.0 / (beta + 1.0);
}

double pareto_ccdf(const ParetoModel& m, double x) {
  if (!std::isfinite(x) || x < m.x_min)
    fail(errc::domain, "evaluation point below the scale parameter");
  return std::pow(m.x_min / x, m.beta);
}

double pareto_pdf(const ParetoModel& m, double x) {
  if (!std::isfinite(x) || x < m.x_min)
    fail(errc::domain, "evaluation point below the scale parameter");
  return m.beta * std::pow(m.x_min, m.beta) * std::pow(x, -(m.beta + 1.0));
}

PdfSpec pareto_density(const ParetoModel& m) {
  const double x_min = m.x_min;
  const double beta = m.beta;
  const double scale = beta * std::pow(x_min, beta);
  return PdfSpec{
      [x_min, beta, scale](double x) {
        return x < x_min ? 0.0 : scale * std::pow(x, -(beta + 1.0));
      },
      x_min, std::numeric_limits<double>::infinity()};
}

std::vector<double> pareto_sample(const ParetoModel& m, std::size_t n, std::uint64_t seed) {
  std::vector<double> out;
  out.reserve(n);
  Rng rng(seed);
  const double inv_beta = 1.0 / m.beta;
  for (std::size_t i = 0; i < n; ++i)
    out.push_back(m.x_min * std::pow(rng.uniform01(), -inv_beta));
  return out;
}

double zp_efficiency(double beta) {
  if (!std::isfinite(beta) || beta <= 0.0)
    fail(errc::domain, "tail index must be positive");
  if (beta <= 1.0) fail(errc::divergence, "efficiency diverges for tail index <= 1");
  return (beta + 1.0) * (std::pow(beta, -1.0 / (beta + 1.0)) * beta / (beta - 1.0) - 1.0);
}

double gini_from_beta(double beta) {
  if (!std::isfinite(beta) || beta <= 0.5)
    fail(errc::domain, "Gini coefficient needs tail index > 1/2");
  return 1.0 / (2.0 * beta - 1.0);
}

std::vector<std::pair<std::uint64_t, double>> zipf_curve(const ZipfModel& z, std::size_t ranks) {
  std::vector<std::pair<std::uint64_t, double>> out;
  out.reserve(ranks);
  for (std::size_t r = 1; r <= ranks; ++r)
    out.emplace_back(r, z.x1 / std::pow(static_cast<double>(r), z.alpha));
  return out;
}

double zero_efficiency_objective(double x) {
  if (x == 0.0) return 0.0;  // continuous extension at the origin
  return std::pow(x, x) * std::pow(1.0 - x, 1.0 - x) - (1.0 - 2.0 * x);
}

double zero_efficiency_threshold(double tol) {
  if (!(tol > 0.0)) fail(errc::domain, "tolerance must be positive");
  const double lo = 0.01, hi = 0.49;
  const double flo = zero_efficiency_objective(lo);
  const double fhi = zero_efficiency_objective(hi);
  if (!(flo < 0.0) || !(fhi > 0.0))
    fail(errc::bracket, "zero-efficiency bracket lost its sign change");
  return solve_bracketed_root(zero_efficiency_objective, lo, hi, std::min(tol, 1e-10)).root;
}

double zero_shannon_threshold(double tol) {
  if (!(tol > 0.0)) fail(errc::domain, "tolerance must be positive");
  auto f = [](double beta) { return -std::log(beta) + 1.0 + 1.0 / beta; };
  return solve_bracketed_root(f, 1.0 + 1e-9, 10.0, std::min(tol, 1e-10)).root;
}

std::string pareto_to_json(const ParetoModel& m) {
  nlohmann::json j;
  j["x_min"] = m.x_min;
  j["beta"] = m.beta;
  return j.dump();
}

ParetoModel pareto_from_json(const std::string& json) {
  nlohmann::json j = nlohmann::json::parse(json, nullptr, false);
  if (j.is_discarded()) fail(errc::parse, "malformed JSON model");
  if (!j.is_object() || !j.contains("x_min") || !j.contains("beta"))
    fail(errc::parse, "model JSON must carry x_min and beta");
  if (!j["x_min"].is_number() || !j["beta"].is_number())
    fail(errc::parse, "x_min and beta must be numbers");
  return ParetoModel(j["x_min"].get<double>(), j["beta"].get<double>());
}

}  // namespace zpeff
