#pragma once

#include <functional>
#include <span>

#include "zpeff/distribution.hpp"
#include "zpeff/quadrature.hpp"

namespace zpeff {

// Inputs within this band of 0 (or 1) take the analytic limit branch of the
// efficiency formulas instead of the raw expression.
inline constexpr double kLimitBranchTol = 1e-10;

// Loss / nonadditivity coefficient of the efficiency composition law.
//
// strict_range restricts a to the analytic Zipf-Pareto domain 0 < a < 1/2.
// Without it the discrete average accepts 0 <= a <= 1 (the endpoints resolve
// to analytic limits) and composition accepts any finite a, including the
// ideal-engine case a = -1 and the additive limit a = 0.
struct EfficiencyParams {
  double a = 0.0;
  bool strict_range = false;
};

// One work/heat exchange; heat must be strictly positive.
struct EngineExchange {
  double work = 0.0;
  double heat = 0.0;
};

// Continuous density on [lower, upper]; upper may be +infinity. The density
// must be non-negative and integrate to one (checked within kPdfNormTol at
// the point of use).
struct PdfSpec {
  std::function<double(double)> density;
  double lower = 0.0;
  double upper = 0.0;
};

inline constexpr double kPdfNormTol = 1e-9;

// W/Q ratio of a single exchange.
double engine_efficiency(const EngineExchange& e);

// Composition law eta1 + eta2 + a*eta1*eta2.
double compose_efficiency(double eta1, double eta2, double a);

// Per-state efficiency (p^{-a} - 1)/a for 0 < p <= 1; -ln p in the a -> 0
// limit branch.
double per_state_efficiency(double p, double a);

// Ensemble average (sum p_i^{1-a} - 1)/a. Limit branches: Shannon entropy at
// a -> 0, support size minus one at a -> 1. Zero-probability states
// contribute nothing.
double discrete_efficiency(const Distribution& p, const EfficiencyParams& params);
double discrete_efficiency(const Distribution& p, double a);

// Continuous analogue (integral of rho^{1-a} minus 1)/a over the support.
// Requires 0 < a < 1/2; throws errc::divergence when the tail estimate shows
// the integral cannot converge.
double continuous_efficiency(const PdfSpec& pdf, double a, const QuadratureConfig& quad = {});

// Fast path for harnesses that already hold a valid probability vector.
double discrete_efficiency_unchecked(std::span<const double> probs, double a);

}  // namespace zpeff
