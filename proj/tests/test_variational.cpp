#include <doctest.h>

#include <cmath>
#include <functional>
#include <vector>

#include "zpeff/errors.hpp"
#include "zpeff/measures.hpp"
#include "zpeff/variational.hpp"

using namespace zpeff;

namespace {

errc code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return errc::domain;
}

VariationalProblem mean_problem(std::vector<double> values, double a, double mu) {
  VariationalProblem prob;
  prob.values = std::move(values);
  prob.a = a;
  prob.mean_target = mu;
  return prob;
}

double eta_of(const std::vector<double>& probs, double a) {
  return discrete_efficiency_unchecked(probs, a);
}

// Brute-force oracle on two levels: scan the p grid, keep the feasible points
// for the mean constraint, and maximize the efficiency among them.
double grid_search_two_levels(double x1, double x2, double a, double mu, double step) {
  double best_p = -1.0, best_eta = -1.0, best_feas = 1e300;
  const long n = std::lround(1.0 / step);
  for (long k = 0; k <= n; ++k) {
    const double p = static_cast<double>(k) * step;
    const double mean = p * x1 + (1.0 - p) * x2;
    const double feas = std::abs(mean - mu);
    if (feas < best_feas - 1e-15) {
      best_feas = feas;
      best_eta = eta_of({p, 1.0 - p}, a);
      best_p = p;
    } else if (feas <= best_feas + 1e-15) {
      const double eta = eta_of({p, 1.0 - p}, a);
      if (eta > best_eta) {
        best_eta = eta;
        best_p = p;
      }
    }
  }
  return best_p;
}

// Three levels: the feasible set is a segment parametrized by p3; coarse scan
// refined around the optimum.
std::vector<double> grid_search_three_levels(const std::vector<double>& x, double a, double mu) {
  auto point = [&](double s, bool& ok) -> std::vector<double> {
    const double p2 = (mu - s * x[2] - (1.0 - s) * x[0]) / (x[1] - x[0]);
    const double p1 = 1.0 - s - p2;
    ok = p1 >= -1e-12 && p2 >= -1e-12 && s >= -1e-12;
    return {std::max(p1, 0.0), std::max(p2, 0.0), std::max(s, 0.0)};
  };
  auto scan = [&](double lo, double hi, double step) {
    double best_s = lo, best_eta = -1e300;
    for (double s = lo; s <= hi + 1e-15; s += step) {
      bool ok = false;
      const auto p = point(s, ok);
      if (!ok) continue;
      const double eta = eta_of(p, a);
      if (eta > best_eta) {
        best_eta = eta;
        best_s = s;
      }
    }
    return best_s;
  };
  double s = scan(0.0, 1.0, 1e-4);
  s = scan(std::max(0.0, s - 2e-4), std::min(1.0, s + 2e-4), 1e-6);
  bool ok = false;
  return point(s, ok);
}

}  // namespace

TEST_CASE("problem validation") {
  CHECK(code_of([] { solve_stationary(mean_problem({}, 0.25, 1.0)); }) == errc::validation);
  CHECK(code_of([] { solve_stationary(mean_problem({1.0, 1.0}, 0.25, 1.0)); }) ==
        errc::validation);
  CHECK(code_of([] { solve_stationary(mean_problem({-1.0, 2.0}, 0.25, 1.0)); }) ==
        errc::validation);
  CHECK(code_of([] { solve_stationary(mean_problem({1.0, 2.0}, 0.7, 1.5)); }) == errc::domain);
  CHECK(code_of([] { solve_stationary(mean_problem({1.0, 2.0}, 0.25, 5.0)); }) ==
        errc::feasibility);
  CHECK(code_of([] { solve_stationary(mean_problem({1.0, 2.0}, 0.25, 0.2)); }) ==
        errc::feasibility);
  VariationalProblem both = mean_problem({1.0, 2.0}, 0.25, 1.5);
  both.multiplier = 1.0;
  CHECK(code_of([&] { solve_stationary(both); }) == errc::validation);
  VariationalProblem neither;
  neither.values = {1.0, 2.0};
  neither.a = 0.25;
  CHECK(code_of([&] { solve_stationary(neither); }) == errc::validation);
  VariationalProblem bad_mult;
  bad_mult.values = {1.0, 2.0};
  bad_mult.a = 0.25;
  bad_mult.multiplier = -2.0;
  CHECK(code_of([&] { solve_stationary(bad_mult); }) == errc::validation);
}

TEST_CASE("two levels against the brute-force oracle") {
  const auto sol = solve_stationary(mean_problem({1.0, 2.0}, 0.25, 1.5));
  const double oracle_p = grid_search_two_levels(1.0, 2.0, 0.25, 1.5, 1e-6);
  CHECK(std::abs(sol.distribution.prob(0) - oracle_p) < 1e-5);
  CHECK(sol.distribution.prob(0) == doctest::Approx(0.5).epsilon(1e-9));
  CHECK(sol.residual < 1e-9);

  // an asymmetric target on the decreasing branch
  const auto sol2 = solve_stationary(mean_problem({1.0, 2.0}, 0.25, 1.2));
  const double oracle_p2 = grid_search_two_levels(1.0, 2.0, 0.25, 1.2, 1e-6);
  CHECK(std::abs(sol2.distribution.prob(0) - oracle_p2) < 1e-5);
  CHECK(sol2.distribution.mean() == doctest::Approx(1.2).epsilon(1e-10));
}

TEST_CASE("three levels against the brute-force oracle") {
  const std::vector<double> x{1.0, 2.0, 3.0};
  for (double mu : {1.4, 1.8, 2.3}) {
    const auto sol = solve_stationary(mean_problem(x, 0.25, mu));
    const auto oracle_p = grid_search_three_levels(x, 0.25, mu);
    for (std::size_t i = 0; i < 3; ++i)
      CHECK(std::abs(sol.distribution.prob(i) - oracle_p[i]) < 1e-5);
    CHECK(sol.distribution.mean() == doctest::Approx(mu).epsilon(1e-10));
    CHECK(sol.residual < 1e-9);
  }
}

TEST_CASE("stationary law is a shifted power law") {
  std::vector<double> x(100);
  for (std::size_t i = 0; i < x.size(); ++i) x[i] = static_cast<double>(i + 1);
  const auto sol = solve_stationary(mean_problem(x, 0.25, 10.0));
  CHECK(sol.fitted_exponent == doctest::Approx(-4.0).epsilon(0.02));
  CHECK(sol.residual < 1e-9);
  CHECK(sol.distribution.mean() == doctest::Approx(10.0).epsilon(1e-9));
  // decreasing in x on the low-mean branch
  for (std::size_t i = 1; i < x.size(); ++i)
    CHECK(sol.distribution.prob(i) < sol.distribution.prob(i - 1));
  // multipliers reproduce the stationarity line
  const double lhs =
      (1.0 - 0.25) / 0.25 * std::pow(sol.distribution.prob(10), -0.25);
  const double rhs = sol.multiplier_const + sol.multiplier_linear * x[10];
  CHECK(lhs == doctest::Approx(rhs).epsilon(1e-9));
}

TEST_CASE("boundary mean target concentrates on the lowest level") {
  const auto sol = solve_stationary(mean_problem({1.0, 2.0, 3.0, 4.0}, 0.25, 1.0));
  CHECK(sol.distribution.prob(0) >= 1.0 - 1e-6);
}

TEST_CASE("flat target returns the uniform optimum") {
  const auto sol = solve_stationary(mean_problem({1.0, 2.0, 3.0}, 0.25, 2.0));
  for (std::size_t i = 0; i < 3; ++i)
    CHECK(sol.distribution.prob(i) == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
  CHECK(std::isinf(sol.shift));
  CHECK(sol.fitted_exponent == 0.0);
}

TEST_CASE("targets above the flat mean use the mirrored branch") {
  const auto sol = solve_stationary(mean_problem({1.0, 2.0, 3.0}, 0.25, 2.6));
  CHECK(sol.distribution.mean() == doctest::Approx(2.6).epsilon(1e-10));
  CHECK(sol.distribution.prob(2) > sol.distribution.prob(1));
  CHECK(sol.distribution.prob(1) > sol.distribution.prob(0));
  CHECK(sol.multiplier_linear < 0.0);
  CHECK(sol.residual < 1e-9);
}

TEST_CASE("scaling covariance") {
  std::vector<double> x{1.0, 2.0, 4.0, 9.0, 20.0};
  const auto base = solve_stationary(mean_problem(x, 0.3, 3.0));
  const double s = 7.0;
  std::vector<double> scaled = x;
  for (auto& v : scaled) v *= s;
  const auto lifted = solve_stationary(mean_problem(scaled, 0.3, 3.0 * s));
  for (std::size_t i = 0; i < x.size(); ++i)
    CHECK(lifted.distribution.prob(i) ==
          doctest::Approx(base.distribution.prob(i)).epsilon(1e-9));
  CHECK(lifted.shift == doctest::Approx(s * base.shift).epsilon(1e-7));
}

TEST_CASE("multiplier form matches the fixed-mean form at its own mean") {
  std::vector<double> x(50);
  for (std::size_t i = 0; i < x.size(); ++i) x[i] = static_cast<double>(i + 1);
  VariationalProblem prob;
  prob.values = x;
  prob.a = 0.3;
  prob.multiplier = 1.0;
  const auto via_multiplier = solve_stationary(prob);
  CHECK(via_multiplier.residual < 1e-9);
  for (std::size_t i = 1; i < x.size(); ++i)
    CHECK(via_multiplier.distribution.prob(i) < via_multiplier.distribution.prob(i - 1));

  const double mean = via_multiplier.distribution.mean();
  const auto via_mean = solve_stationary(mean_problem(x, 0.3, mean));
  for (std::size_t i = 0; i < x.size(); ++i)
    CHECK(via_mean.distribution.prob(i) ==
          doctest::Approx(via_multiplier.distribution.prob(i)).epsilon(1e-8));
}

TEST_CASE("ccdf exponent on a noiseless power-law table") {
  const double beta = 1.7;
  const std::size_t n = 60;
  std::vector<double> values(n), probs(n);
  for (std::size_t i = 0; i < n; ++i) values[i] = static_cast<double>(i + 1);
  // tail sums land exactly on x^-beta; the truncation mass sits on the last
  // state
  probs[0] = 1.0 - std::pow(values[0], -beta);
  for (std::size_t i = 1; i + 1 < n; ++i)
    probs[i] = std::pow(values[i - 1], -beta) - std::pow(values[i], -beta);
  probs[n - 1] = std::pow(values[n - 2], -beta);
  VariationalSolution synthetic{Distribution(probs, values), 0.3, 0, 0, 0, 0, 0, 0, 0};
  CHECK(ccdf_tail_exponent(synthetic) == doctest::Approx(beta).epsilon(1e-6));
}

TEST_CASE("ccdf exponent needs enough support") {
  std::vector<double> values{1, 2, 3, 4, 5};
  std::vector<double> probs{0.2, 0.2, 0.2, 0.2, 0.2};
  VariationalSolution tiny{Distribution(probs, values), 0.3, 0, 0, 0, 0, 0, 0, 0};
  CHECK(code_of([&] { ccdf_tail_exponent(tiny); }) == errc::insufficient_data);
}

TEST_CASE("solver output approaches the model tail exponent") {
  auto fit_for = [](std::size_t n) {
    std::vector<double> x(n);
    for (std::size_t i = 0; i < n; ++i) x[i] = static_cast<double>(i + 1);
    const auto sol = solve_stationary(mean_problem(x, 1.0 / 3.0, 3.0));
    return ccdf_tail_exponent(sol);
  };
  const double beta_expected = 2.0;  // 1/a - 1 at a = 1/3
  const double fit_small = fit_for(100);
  const double fit_large = fit_for(1000);
  CHECK(std::abs(fit_large - beta_expected) / beta_expected < 0.05);
  CHECK(std::abs(fit_large - beta_expected) <= std::abs(fit_small - beta_expected) + 1e-6);
}

TEST_CASE("the zero-efficiency coefficient reproduces its tail index") {
  std::vector<double> x(1000);
  for (std::size_t i = 0; i < x.size(); ++i) x[i] = static_cast<double>(i + 1);
  const auto sol = solve_stationary(mean_problem(x, 0.194513, 1.3));
  const double beta_expected = 1.0 / 0.194513 - 1.0;  // 4.141
  const double fitted = ccdf_tail_exponent(sol);
  CHECK(std::abs(fitted - beta_expected) / beta_expected < 0.05);
}

TEST_CASE("solution serialization") {
  const auto sol = solve_stationary(mean_problem({1.0, 2.0, 3.0}, 0.25, 1.5));
  const std::string csv = sol.to_csv();
  CHECK(csv.rfind("i,x,p\n1,", 0) == 0);
  CHECK(csv.find("\n3,3,") != std::string::npos);
  const std::string json = sol.to_json();
  for (const char* key : {"\"probs\"", "\"values\"", "\"multipliers\"", "\"shift\"",
                          "\"fitted_exponent\"", "\"residual\"", "\"fit_window\""})
    CHECK(json.find(key) != std::string::npos);
}
