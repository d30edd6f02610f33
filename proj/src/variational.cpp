#include "zpeff/variational.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include <json.hpp>

#include "zpeff/errors.hpp"
#include "zpeff/format.hpp"
#include "zpeff/roots.hpp"

namespace zpeff {
namespace {

constexpr double kBoundaryGap = 1e-13;

void validate_problem(const VariationalProblem& prob) {
  if (prob.values.empty()) fail(errc::validation, "no achievement levels given");
  double prev = 0.0;
  for (double x : prob.values) {
    if (!std::isfinite(x) || x <= 0.0)
      fail(errc::validation, "achievement levels must be positive and finite");
    if (x <= prev) fail(errc::validation, "achievement levels must be strictly increasing");
    prev = x;
  }
  if (!std::isfinite(prob.a) || prob.a <= 0.0 || prob.a >= 0.5)
    fail(errc::domain, "loss coefficient must lie in (0, 1/2)");
  if (prob.mean_target.has_value() == prob.multiplier.has_value())
    fail(errc::validation, "exactly one of mean target / multiplier must be given");
  if (prob.multiplier && (!std::isfinite(*prob.multiplier) || *prob.multiplier <= 0.0))
    fail(errc::validation, "multiplier must be positive");
  if (prob.mean_target && !std::isfinite(*prob.mean_target))
    fail(errc::validation, "mean target must be finite");
}

// log(sum exp(v_i)) without overflow.
double log_sum_exp(const std::vector<double>& v) {
  const double m = *std::max_element(v.begin(), v.end());
  double s = 0.0;
  for (double x : v) s += std::exp(x - m);
  return m + std::log(s);
}

// Normalized p_i proportional to w_i^{-1/a}, computed in log space. w holds
// x_i + t on the decreasing branch and s - x_i on the mirrored one.
std::vector<double> probs_from_log_weights(const std::vector<double>& log_w, double a) {
  const std::size_t n = log_w.size();
  std::vector<double> log_q(n);
  for (std::size_t i = 0; i < n; ++i) log_q[i] = -log_w[i] / a;
  const double log_z = log_sum_exp(log_q);
  std::vector<double> p(n);
  for (std::size_t i = 0; i < n; ++i) p[i] = std::exp(log_q[i] - log_z);
  const double total = kahan_sum(p);
  for (auto& x : p) x /= total;
  return p;
}

double mean_of(const std::vector<double>& p, const std::vector<double>& x) {
  double m = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) m += p[i] * x[i];
  return m;
}

struct OlsFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 1.0;
};

OlsFit ols(const std::vector<double>& xs, const std::vector<double>& ys) {
  const double n = static_cast<double>(xs.size());
  const double mx = std::accumulate(xs.begin(), xs.end(), 0.0) / n;
  const double my = std::accumulate(ys.begin(), ys.end(), 0.0) / n;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double dx = xs[i] - mx;
    const double dy = ys[i] - my;
    sxx += dx * dx;
    sxy += dx * dy;
    syy += dy * dy;
  }
  OlsFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  if (syy > 0.0) {
    double ss_res = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      const double r = ys[i] - (fit.intercept + fit.slope * xs[i]);
      ss_res += r * r;
    }
    fit.r_squared = 1.0 - ss_res / syy;
  }
  return fit;
}

// Regression window over n points: drop the bottom decile and the top two,
// widening back to the full range when that leaves fewer than two points.
std::pair<std::size_t, std::size_t> fit_window(std::size_t n) {
  std::size_t lo = (n + 9) / 10;
  std::size_t hi = n > 2 ? n - 2 : n;
  if (hi < lo + 2) {
    lo = 0;
    hi = n;
  }
  return {lo, hi};
}

}  // namespace

VariationalSolution solve_stationary(const VariationalProblem& prob, double tol) {
  validate_problem(prob);
  if (!(tol > 0.0)) fail(errc::domain, "solver tolerance must be positive");
  const auto& x = prob.values;
  const std::size_t n = x.size();
  const double a = prob.a;

  // w_i = |x_i + shift| of the stationary family; filled per branch below.
  std::vector<double> log_w(n);
  std::vector<double> p;
  double shift = 0.0;
  bool mirrored = false;
  bool flat = false;
  bool boundary_clamped = false;

  if (n == 1) {
    if (prob.mean_target && std::abs(*prob.mean_target - x[0]) > 1e-9 * std::max(1.0, x[0]))
      fail(errc::feasibility, "mean target unreachable on a single level");
    p = {1.0};
    flat = true;
  } else if (prob.multiplier) {
    // Stationarity with a linear achievement term of multiplier c:
    // ((1-a)/a) p_i^{-a} = lambda + c x_i, with lambda fixing normalization.
    const double c = *prob.multiplier;
    const double ratio = a / (1.0 - a);
    auto log_norm = [&](double lambda) {
      std::vector<double> log_q(n);
      for (std::size_t i = 0; i < n; ++i)
        log_q[i] = -std::log(ratio * (lambda + c * x[i])) / a;
      return log_sum_exp(log_q);
    };
    double lo = -c * x.front() + kBoundaryGap * std::max(1.0, c * x.front());
    double hi = std::max({1.0, c * x.back(), -lo});
    while (log_norm(hi) > 0.0) {
      hi *= 4.0;
      if (hi > 1e18) fail(errc::convergence, "normalization multiplier bracket exhausted");
    }
    if (log_norm(lo) < 0.0)
      fail(errc::convergence, "normalization multiplier bracket does not straddle 1");
    const double lambda =
        solve_bracketed_root([&](double l) { return log_norm(l); }, lo, hi,
                             1e-14 * std::max(1.0, std::abs(hi)))
            .root;
    shift = lambda / c;
    for (std::size_t i = 0; i < n; ++i) log_w[i] = std::log(x[i] + shift);
    p = probs_from_log_weights(log_w, a);
  } else {
    const double mu = *prob.mean_target;
    const double x_lo = x.front(), x_hi = x.back();
    const double range = x_hi - x_lo;
    const double feas_slack = 1e-12 * std::max(1.0, range);
    if (mu < x_lo - feas_slack || mu > x_hi + feas_slack)
      fail(errc::feasibility, "mean target outside the achievement range");
    const double xbar = std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(n);

    if (std::abs(mu - xbar) <= 1e-12 * std::max(1.0, std::abs(xbar))) {
      // The unconstrained optimum is uniform; the linear multiplier vanishes.
      p.assign(n, 1.0 / static_cast<double>(n));
      flat = true;
    } else if (mu < xbar) {
      // Decreasing branch: p_i ~ (x_i + t)^{-1/a}, t in (-x_lo, inf);
      // the constrained mean increases monotonically with t.
      auto mean_at = [&](double t) {
        for (std::size_t i = 0; i < n; ++i) log_w[i] = std::log(x[i] + t);
        return mean_of(probs_from_log_weights(log_w, a), x);
      };
      const double t_lo = -x_lo + kBoundaryGap * std::max(1.0, x_lo);
      if (mean_at(t_lo) >= mu) {
        shift = t_lo;  // boundary target: everything the ladder allows
        boundary_clamped = true;
      } else {
        double t_hi = std::max(1.0, x_hi);
        while (mean_at(t_hi) < mu) {
          t_hi *= 4.0;
          if (t_hi > 1e18) fail(errc::convergence, "shift bracket exhausted");
        }
        shift = solve_bracketed_root([&](double t) { return mean_at(t) - mu; }, t_lo, t_hi,
                                     1e-13 * std::max(1.0, std::abs(t_hi)))
                    .root;
      }
      for (std::size_t i = 0; i < n; ++i) log_w[i] = std::log(x[i] + shift);
      p = probs_from_log_weights(log_w, a);
    } else {
      // Mirrored branch for targets above the flat mean:
      // p_i ~ (s - x_i)^{-1/a}, s in (x_hi, inf), mean decreasing in s.
      mirrored = true;
      auto mean_at = [&](double s) {
        for (std::size_t i = 0; i < n; ++i) log_w[i] = std::log(s - x[i]);
        return mean_of(probs_from_log_weights(log_w, a), x);
      };
      const double s_lo = x_hi + kBoundaryGap * std::max(1.0, x_hi);
      double s = 0.0;
      if (mean_at(s_lo) <= mu) {
        s = s_lo;
        boundary_clamped = true;
      } else {
        double s_hi = std::max(1.0, 2.0 * x_hi);
        while (mean_at(s_hi) > mu) {
          s_hi *= 4.0;
          if (s_hi > 1e18) fail(errc::convergence, "shift bracket exhausted");
        }
        s = solve_bracketed_root([&](double sv) { return mean_at(sv) - mu; }, s_lo, s_hi,
                                 1e-13 * std::max(1.0, std::abs(s_hi)))
                .root;
      }
      shift = -s;
      for (std::size_t i = 0; i < n; ++i) log_w[i] = std::log(s - x[i]);
      p = probs_from_log_weights(log_w, a);
    }
  }

  VariationalSolution sol{Distribution(std::vector<double>(p), std::vector<double>(x)),
                          a, 0.0, 0.0, 0.0, 0.0, 0.0, 0, 0};

  if (flat) {
    const double c0 = (1.0 - a) / a * std::pow(static_cast<double>(n), a);
    sol.multiplier_const = c0;
    sol.multiplier_linear = 0.0;
    sol.shift = std::numeric_limits<double>::infinity();
    sol.fitted_exponent = 0.0;
    sol.fit_lo = 0;
    sol.fit_hi = n;
  } else {
    // ((1-a)/a) p_i^{-a} = c1 (x_i + shift) with c1 = ((1-a)/a) Z^a, where
    // ln Z is the log-normalizer of the weight family.
    std::vector<double> log_q(n);
    for (std::size_t i = 0; i < n; ++i) log_q[i] = -log_w[i] / a;
    const double log_z = log_sum_exp(log_q);
    const double c1_mag = (1.0 - a) / a * std::exp(a * log_z);
    sol.multiplier_linear = mirrored ? -c1_mag : c1_mag;
    sol.multiplier_const = sol.multiplier_linear * shift;
    sol.shift = shift;

    auto [lo, hi] = fit_window(n);
    std::vector<double> lx, lp;
    for (std::size_t i = lo; i < hi; ++i) {
      if (p[i] > 0.0) {
        lx.push_back(log_w[i]);
        lp.push_back(std::log(p[i]));
      }
    }
    if (lx.size() < 2) {
      lx.clear();
      lp.clear();
      lo = 0;
      hi = n;
      for (std::size_t i = 0; i < n; ++i) {
        if (p[i] > 0.0) {
          lx.push_back(log_w[i]);
          lp.push_back(std::log(p[i]));
        }
      }
    }
    sol.fit_lo = lo;
    sol.fit_hi = hi;
    sol.fitted_exponent = lx.size() >= 2 ? ols(lx, lp).slope : -1.0 / a;
  }

  // Residual: stationarity in log form (ln p_i + (1/a) ln w_i must be
  // constant across occupied states) plus the constraint violations.
  double residual = 0.0;
  if (!flat) {
    double k_sum = 0.0;
    std::size_t k_cnt = 0;
    std::vector<double> k_i(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      if (p[i] > 0.0) {
        k_i[i] = std::log(p[i]) + log_w[i] / a;
        k_sum += k_i[i];
        ++k_cnt;
      }
    }
    const double k_mean = k_sum / static_cast<double>(k_cnt);
    for (std::size_t i = 0; i < n; ++i)
      if (p[i] > 0.0)
        residual = std::max(residual, std::abs(k_i[i] - k_mean) / std::max(1.0, std::abs(k_mean)));
  }
  residual = std::max(residual, std::abs(kahan_sum(p) - 1.0));
  if (prob.mean_target && n > 1 && !boundary_clamped) {
    const double mu = *prob.mean_target;
    residual = std::max(residual, std::abs(mean_of(p, x) - mu) / std::max(1.0, std::abs(mu)));
  }
  sol.residual = residual;
  return sol;
}

double ccdf_tail_exponent(const VariationalSolution& sol) {
  const auto p = sol.distribution.probs();
  const auto x = sol.distribution.values();
  const std::size_t n = p.size();
  std::size_t support = 0;
  for (double pi : p)
    if (pi > 0.0) ++support;
  if (support < 10) fail(errc::insufficient_data, "need at least 10 support points");

  // Tail sums C_i = sum_{j > i} p_j, accumulated from the top for accuracy.
  std::vector<double> ccdf(n, 0.0);
  double acc = 0.0;
  for (std::size_t i = n; i-- > 0;) {
    ccdf[i] = acc;
    acc += p[i];
  }
  std::vector<std::size_t> usable;
  for (std::size_t i = 0; i < n; ++i)
    if (ccdf[i] > 0.0 && x[i] > 0.0) usable.push_back(i);
  if (usable.size() < 2) fail(errc::insufficient_data, "not enough tail points to fit");

  // Finite supports truncate the tail sums, which steepens the apparent
  // slope near the largest values; keep at least a decade of headroom below
  // the top, widening only as far as needed to retain enough points.
  const std::size_t lo = (usable.size() + 9) / 10;
  const double x_top = x[usable.back()];
  double x_cap = x_top / 10.0;
  auto count_below = [&](double cap) {
    std::size_t cnt = 0;
    for (std::size_t k = lo; k < usable.size(); ++k)
      if (x[usable[k]] <= cap) ++cnt;
    return cnt;
  };
  while (count_below(x_cap) < 8 && x_cap < x_top) x_cap *= 2.0;

  std::vector<double> lx, lc;
  if (count_below(x_cap) >= 2) {
    for (std::size_t k = lo; k < usable.size(); ++k) {
      if (x[usable[k]] <= x_cap) {
        lx.push_back(std::log(x[usable[k]]));
        lc.push_back(std::log(ccdf[usable[k]]));
      }
    }
  } else {
    auto [flo, fhi] = fit_window(usable.size());
    for (std::size_t k = flo; k < fhi; ++k) {
      lx.push_back(std::log(x[usable[k]]));
      lc.push_back(std::log(ccdf[usable[k]]));
    }
  }
  if (lx.size() < 2) fail(errc::insufficient_data, "not enough tail points to fit");
  return -ols(lx, lc).slope;
}

std::string VariationalSolution::to_json() const {
  nlohmann::json j;
  j["a"] = a;
  j["probs"] = std::vector<double>(distribution.probs().begin(), distribution.probs().end());
  j["values"] = std::vector<double>(distribution.values().begin(), distribution.values().end());
  j["multipliers"] = {{"constant", multiplier_const}, {"linear", multiplier_linear}};
  if (std::isfinite(shift)) {
    j["shift"] = shift;
  } else {
    j["shift"] = nullptr;
  }
  j["fitted_exponent"] = fitted_exponent;
  j["residual"] = residual;
  j["fit_window"] = {fit_lo, fit_hi};
  return j.dump();
}

std::string VariationalSolution::to_csv() const {
  const auto p = distribution.probs();
  const auto x = distribution.values();
  std::string out = "i,x,p\n";
  for (std::size_t i = 0; i < p.size(); ++i) {
    out += std::to_string(i + 1);
    out += ',';
    out += format_number(x[i]);
    out += ',';
    out += format_number(p[i]);
    out += '\n';
  }
  return out;
}

}  // namespace zpeff
