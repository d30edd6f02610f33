#pragma once

#include "zpeff/distribution.hpp"
#include "zpeff/measures.hpp"
#include "zpeff/quadrature.hpp"

namespace zpeff {

// Parameters of the power-law varentropy integral: exponent b in (0,1),
// model normalization z > 0, and the additive gauge constant c (the value of
// the invariant-measure integral). The dimension constant is fixed to one.
struct VarentropyConfig {
  double b = 0.0;
  double z = 1.0;
  double c = 1.0;
  double dimension_constant = 1.0;
};

// Discrete Shannon entropy -sum p ln p (natural log, 0 ln 0 = 0).
double shannon_discrete(const Distribution& p);

// Differential Shannon entropy of the Pareto density with unit scale:
// -ln(beta) + 1 + 1/beta. Negative once ln(beta) exceeds 1 + 1/beta.
double shannon_pareto(double beta);

// Discrete varentropy (sum p^{1-b} - 1)/(1 - b) for 0 < b < 1. Non-negative;
// zero exactly for degenerate distributions.
double varentropy_discrete(const Distribution& p, double b);

// Exponential-gauge continuous varentropy of the Pareto density: 1/beta.
double varentropy_bs_pareto(double beta);

// Power-law continuous varentropy evaluated by quadrature:
// (z^{-b} * integral rho^{1-b} - c) / (1 - b).
double varentropy_power_numeric(const PdfSpec& pdf, const VarentropyConfig& cfg,
                                const QuadratureConfig& quad = {});

// Closed form of the same quantity for the Pareto density with unit scale:
// (beta + 1) / (beta (beta - 1)). Diverges as beta -> 1+, reported as
// errc::divergence below 1 + kVarentropyDivergenceBand.
double varentropy_power_pareto(double beta);

inline constexpr double kVarentropyDivergenceBand = 1e-9;

}  // namespace zpeff
