#pragma once

#include <functional>

namespace zpeff {

struct QuadratureConfig {
  double abs_tol = 1e-10;
  double rel_tol = 1e-9;
  int max_intervals = 4000;
};

struct QuadratureResult {
  double value = 0.0;
  double error_estimate = 0.0;
  int intervals = 0;
};

// Adaptive Gauss-Kronrod (7,15) integration of f over [lower, upper].
//
// `upper` may be +infinity. An infinite tail [x0, inf) with x0 > 0 is mapped
// onto (0, 1] by the substitution t = x0/x; a tail starting at x0 <= 0 is
// split at x0 + 1 first. Throws errc::convergence when the interval budget
// is exhausted before the tolerance is met.
QuadratureResult integrate(const std::function<double(double)>& f, double lower, double upper,
                           const QuadratureConfig& cfg = {});

// Estimated log-log slope of f at large x (sampled at two points well above
// `lower`). Integrals of f over [lower, inf) diverge when the slope is >= -1;
// callers reject such integrands before integrating. Returns -infinity when
// the sampled tail already vanishes.
double tail_log_slope(const std::function<double(double)>& f, double lower);

// Margin applied to the divergence test: slopes above -1 - kTailSlopeMargin
// are treated as divergent.
inline constexpr double kTailSlopeMargin = 1e-3;

}  // namespace zpeff
