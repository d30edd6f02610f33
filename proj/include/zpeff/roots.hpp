#pragma once

#include <functional>

namespace zpeff {

struct RootResult {
  double root = 0.0;
  double residual = 0.0;
  int iterations = 0;
};

// Brent-style bracketed root finder (inverse quadratic / secant steps with a
// bisection fallback). Requires f(lo) and f(hi) to differ in sign; an exact
// zero at either endpoint is returned immediately. `tol` is an absolute
// tolerance on the bracket width. Throws errc::bracket when no sign change
// is present and errc::convergence when the iteration cap is reached.
RootResult solve_bracketed_root(const std::function<double(double)>& f, double lo, double hi,
                                double tol = 1e-10);

}  // namespace zpeff
