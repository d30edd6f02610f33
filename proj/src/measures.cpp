#include "zpeff/measures.hpp"

#include <cmath>
#include <string>

#include "zpeff/errors.hpp"

namespace zpeff {
namespace {

void check_a_discrete(double a, bool strict_range) {
  if (!std::isfinite(a)) fail(errc::domain, "loss coefficient must be finite");
  if (strict_range) {
    if (!(a > 0.0 && a < 0.5))
      fail(errc::domain, "loss coefficient " + std::to_string(a) + " outside strict range (0, 0.5)");
    return;
  }
  if (a < -kLimitBranchTol || a > 1.0 + kLimitBranchTol)
    fail(errc::domain, "loss coefficient " + std::to_string(a) + " outside [0, 1]");
}

}  // namespace

double engine_efficiency(const EngineExchange& e) {
  if (!std::isfinite(e.work)) fail(errc::domain, "work must be finite");
  if (!std::isfinite(e.heat) || e.heat <= 0.0)
    fail(errc::domain, "heat must be strictly positive");
  return e.work / e.heat;
}

double compose_efficiency(double eta1, double eta2, double a) {
  if (!std::isfinite(eta1) || !std::isfinite(eta2) || !std::isfinite(a))
    fail(errc::domain, "composition inputs must be finite");
  return eta1 + eta2 + a * eta1 * eta2;
}

double per_state_efficiency(double p, double a) {
  if (!std::isfinite(p) || p <= 0.0)
    fail(errc::domain, "per-state efficiency needs a probability in (0, 1]");
  if (p > 1.0) fail(errc::domain, "probability exceeds 1");
  if (!std::isfinite(a)) fail(errc::domain, "loss coefficient must be finite");
  if (std::abs(a) < kLimitBranchTol) return -std::log(p);
  return (std::pow(p, -a) - 1.0) / a;
}

double discrete_efficiency_unchecked(std::span<const double> probs, double a) {
  if (std::abs(a) < kLimitBranchTol) {
    double h = 0.0;
    for (double p : probs)
      if (p > 0.0) h -= p * std::log(p);
    return h;
  }
  if (std::abs(1.0 - a) < kLimitBranchTol) {
    std::size_t occupied = 0;
    for (double p : probs)
      if (p > 0.0) ++occupied;
    return static_cast<double>(occupied) - 1.0;
  }
  double sum = 0.0;
  for (double p : probs)
    if (p > 0.0) sum += std::pow(p, 1.0 - a);
  double eta = (sum - 1.0) / a;
  if (eta < 0.0 && eta > -1e-12) eta = 0.0;  // rounding of sum ~ 1 at degeneracy
  return eta;
}

double discrete_efficiency(const Distribution& p, const EfficiencyParams& params) {
  check_a_discrete(params.a, params.strict_range);
  return discrete_efficiency_unchecked(p.probs(), params.a);
}

double discrete_efficiency(const Distribution& p, double a) {
  return discrete_efficiency(p, EfficiencyParams{a, false});
}

double continuous_efficiency(const PdfSpec& pdf, double a, const QuadratureConfig& quad) {
  if (!std::isfinite(a) || !(a > 0.0 && a < 0.5))
    fail(errc::domain, "continuous efficiency needs 0 < a < 1/2");
  if (!pdf.density) fail(errc::validation, "density function is empty");
  if (!std::isfinite(pdf.lower)) fail(errc::validation, "support lower bound must be finite");
  if (!(pdf.upper > pdf.lower)) fail(errc::validation, "support upper bound must exceed lower");

  auto density = [&pdf](double x) {
    const double v = pdf.density(x);
    if (!std::isfinite(v) || v < 0.0)
      fail(errc::validation, "density is negative or non-finite inside the support");
    return v;
  };

  auto integrand = [&density, a](double x) { return std::pow(density(x), 1.0 - a); };

  if (std::isinf(pdf.upper)) {
    const double slope = tail_log_slope(integrand, pdf.lower);
    if (slope >= -1.0 - kTailSlopeMargin)
      fail(errc::divergence, "efficiency integral diverges on the upper tail");
  }

  const QuadratureResult norm = integrate(density, pdf.lower, pdf.upper, quad);
  if (std::abs(norm.value - 1.0) > std::max(kPdfNormTol, 10.0 * norm.error_estimate))
    fail(errc::validation,
         "density integrates to " + std::to_string(norm.value) + ", not 1");

  const QuadratureResult res = integrate(integrand, pdf.lower, pdf.upper, quad);
  return (res.value - 1.0) / a;
}

}  // namespace zpeff
