#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "zpeff/distribution.hpp"

namespace zpeff {

// Constrained maximization of the discrete efficiency over a finite ladder
// of achievement levels. Exactly one of mean_target / multiplier is set:
// either the mean achievement is pinned to mean_target, or the linear
// achievement term enters with the given positive multiplier and only
// normalization is enforced.
struct VariationalProblem {
  std::vector<double> values;  // strictly increasing, positive
  double a = 0.0;              // in (0, 1/2)
  std::optional<double> mean_target;
  std::optional<double> multiplier;
};

// Stationary solution. The stationarity condition has the closed form
// ((1-a)/a) p_i^{-a} = c0 + c1 x_i, so p_i is proportional to
// |x_i + shift|^{-1/a} with shift = c0/c1.
struct VariationalSolution {
  Distribution distribution;      // over the problem's values
  double a = 0.0;
  double multiplier_const = 0.0;  // c0
  double multiplier_linear = 0.0; // c1
  double shift = 0.0;             // c0 / c1
  double fitted_exponent = 0.0;   // OLS slope of ln p vs ln|x + shift|
  double residual = 0.0;          // worst relative stationarity violation
  std::size_t fit_lo = 0;         // regression window [fit_lo, fit_hi)
  std::size_t fit_hi = 0;

  std::string to_json() const;
  std::string to_csv() const;  // columns: i,x,p
};

// Solves the stationarity system by bracketed root-solving on the shift (or
// on the normalization multiplier in the multiplier form). `tol` bounds the
// constraint residuals. Throws errc::feasibility when the mean target lies
// outside the achievement range and errc::convergence when the solve stalls.
VariationalSolution solve_stationary(const VariationalProblem& prob, double tol = 1e-12);

// Tail exponent of the solution's discrete CCDF sum_{x_j > x} p_j fitted on
// log-log axes (the head and the bottom decile are excluded from the fit).
// Requires at least 10 support points.
double ccdf_tail_exponent(const VariationalSolution& sol);

}  // namespace zpeff
