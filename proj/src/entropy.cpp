#include "zpeff/entropy.hpp"

#include <cmath>
#include <string>

#include "zpeff/errors.hpp"

namespace zpeff {

double shannon_discrete(const Distribution& p) {
  double h = 0.0;
  for (double pi : p.probs())
    if (pi > 0.0) h -= pi * std::log(pi);
  return h < 0.0 ? 0.0 : h;  // guard tiny negative rounding at degeneracy
}

double shannon_pareto(double beta) {
  if (!std::isfinite(beta) || beta <= 0.0)
    fail(errc::domain, "tail index must be positive");
  return -std::log(beta) + 1.0 + 1.0 / beta;
}

double varentropy_discrete(const Distribution& p, double b) {
  if (!std::isfinite(b) || b <= 0.0 || b >= 1.0)
    fail(errc::domain, "varentropy exponent must lie in (0, 1)");
  double sum = 0.0;
  for (double pi : p.probs())
    if (pi > 0.0) sum += std::pow(pi, 1.0 - b);
  double s = (sum - 1.0) / (1.0 - b);
  if (s < 0.0 && s > -1e-12) s = 0.0;
  return s;
}

double varentropy_bs_pareto(double beta) {
  if (!std::isfinite(beta) || beta <= 0.0)
    fail(errc::domain, "tail index must be positive");
  return 1.0 / beta;
}

double varentropy_power_numeric(const PdfSpec& pdf, const VarentropyConfig& cfg,
                                const QuadratureConfig& quad) {
  if (!std::isfinite(cfg.b) || cfg.b <= 0.0 || cfg.b >= 1.0)
    fail(errc::domain, "varentropy exponent must lie in (0, 1)");
  if (!std::isfinite(cfg.z) || cfg.z <= 0.0)
    fail(errc::validation, "normalization constant must be positive");
  if (!std::isfinite(cfg.c)) fail(errc::validation, "gauge constant must be finite");
  if (cfg.dimension_constant != 1.0)
    fail(errc::validation, "dimension constant is fixed to 1");
  if (!pdf.density) fail(errc::validation, "density function is empty");
  if (!std::isfinite(pdf.lower)) fail(errc::validation, "support lower bound must be finite");
  if (!(pdf.upper > pdf.lower)) fail(errc::validation, "support upper bound must exceed lower");

  auto density = [&pdf](double x) {
    const double v = pdf.density(x);
    if (!std::isfinite(v) || v < 0.0)
      fail(errc::validation, "density is negative or non-finite inside the support");
    return v;
  };
  const double zb = std::pow(cfg.z, -cfg.b);
  auto integrand = [&density, &cfg, zb](double x) {
    return zb * std::pow(density(x), 1.0 - cfg.b);
  };

  if (std::isinf(pdf.upper)) {
    const double slope = tail_log_slope(integrand, pdf.lower);
    if (slope >= -1.0 - kTailSlopeMargin)
      fail(errc::divergence, "varentropy integral diverges on the upper tail");
  }

  const QuadratureResult norm = integrate(density, pdf.lower, pdf.upper, quad);
  if (std::abs(norm.value - 1.0) > std::max(kPdfNormTol, 10.0 * norm.error_estimate))
    fail(errc::validation,
         "density integrates to " + std::to_string(norm.value) + ", not 1");

  const QuadratureResult res = integrate(integrand, pdf.lower, pdf.upper, quad);
  return (res.value - cfg.c) / (1.0 - cfg.b);
}

double varentropy_power_pareto(double beta) {
  if (!std::isfinite(beta) || beta <= 0.0)
    fail(errc::domain, "tail index must be positive");
  if (beta <= 1.0 + kVarentropyDivergenceBand)
    fail(errc::divergence, "power-law varentropy diverges as the tail index reaches 1");
  return (beta + 1.0) / (beta * (beta - 1.0));
}

}  // namespace zpeff
