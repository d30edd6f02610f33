#include "zpeff/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <vector>

#include "zpeff/errors.hpp"

namespace zpeff {
namespace {

// Gauss-Kronrod (7,15) nodes and weights on [-1, 1]; the odd-indexed Kronrod
// nodes together with the center are the embedded 7-point Gauss rule.
constexpr double kXgk[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr double kWgk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr double kWg[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Interval {
  double lo, hi, value, error;
  bool operator<(const Interval& o) const { return error < o.error; }
};

Interval gk15(const std::function<double(double)>& f, double lo, double hi) {
  const double center = 0.5 * (lo + hi);
  const double half = 0.5 * (hi - lo);
  const double fc = f(center);
  double resk = kWgk[7] * fc;
  double resg = kWg[3] * fc;
  for (int j = 0; j < 7; ++j) {
    const double dx = half * kXgk[j];
    const double fsum = f(center - dx) + f(center + dx);
    resk += kWgk[j] * fsum;
    if (j % 2 == 1) resg += kWg[j / 2] * fsum;
  }
  return {lo, hi, resk * half, std::abs((resk - resg) * half)};
}

QuadratureResult adaptive(const std::function<double(double)>& f, double lo, double hi,
                          const QuadratureConfig& cfg) {
  std::priority_queue<Interval> queue;
  Interval first = gk15(f, lo, hi);
  queue.push(first);
  int used = 1;
  double total = first.value;
  double toterr = first.error;
  while (toterr > std::max(cfg.abs_tol, cfg.rel_tol * std::abs(total))) {
    if (used >= cfg.max_intervals)
      fail(errc::convergence, "quadrature interval budget exhausted");
    Interval worst = queue.top();
    // With a max-heap on error, a non-positive top means every interval is
    // frozen; the accumulated toterr is then pure rounding drift.
    if (worst.error <= 0.0) return {total, 0.0, used};
    queue.pop();
    const double mid = 0.5 * (worst.lo + worst.hi);
    if (mid <= worst.lo || mid >= worst.hi) {
      // The midpoint is no longer representable; freeze this sliver and keep
      // refining the rest.
      toterr -= worst.error;
      worst.error = 0.0;
      queue.push(worst);
      ++used;
      continue;
    }
    Interval left = gk15(f, worst.lo, mid);
    Interval right = gk15(f, mid, worst.hi);
    total += left.value + right.value - worst.value;
    toterr += left.error + right.error - worst.error;
    queue.push(left);
    queue.push(right);
    ++used;
  }
  return {total, toterr, used};
}

}  // namespace

double tail_log_slope(const std::function<double(double)>& f, double lower) {
  const double x1 = std::max(lower, 1.0) * 1e6;
  const double x2 = x1 * 1e2;
  const double f1 = f(x1);
  const double f2 = f(x2);
  if (!(f1 > 0.0) || !(f2 > 0.0)) return -std::numeric_limits<double>::infinity();
  return std::log(f2 / f1) / std::log(x2 / x1);
}

QuadratureResult integrate(const std::function<double(double)>& f, double lower, double upper,
                           const QuadratureConfig& cfg) {
  if (!std::isfinite(lower)) fail(errc::domain, "lower integration bound must be finite");
  if (std::isnan(upper)) fail(errc::domain, "upper integration bound is NaN");
  if (upper <= lower) fail(errc::domain, "upper integration bound must exceed lower");
  if (std::isfinite(upper)) return adaptive(f, lower, upper, cfg);

  if (lower <= 0.0) {
    // Split so the tail substitution starts from a positive point.
    const double split = lower + 1.0;
    QuadratureResult head = adaptive(f, lower, split, cfg);
    QuadratureResult tail = integrate(f, split, upper, cfg);
    return {head.value + tail.value, head.error_estimate + tail.error_estimate,
            head.intervals + tail.intervals};
  }

  // t = lower/x maps [lower, inf) onto (0, 1]; the rule never evaluates the
  // endpoints, so t = 0 is safe.
  const double x0 = lower;
  auto transformed = [&f, x0](double t) {
    const double x = x0 / t;
    return f(x) * x0 / (t * t);
  };
  return adaptive(transformed, 0.0, 1.0, cfg);
}

}  // namespace zpeff
