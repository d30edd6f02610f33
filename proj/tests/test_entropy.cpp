#include <doctest.h>

#include <cmath>
#include <functional>
#include <vector>

#include "oracles.hpp"
#include "zpeff/entropy.hpp"
#include "zpeff/errors.hpp"
#include "zpeff/measures.hpp"
#include "zpeff/pareto.hpp"
#include "zpeff/quadrature.hpp"
#include "zpeff/rng.hpp"

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

double shannon_quadrature(double beta) {
  const auto pdf = pareto_density(ParetoModel(1.0, beta));
  return -integrate(
              [&pdf](double x) {
                const double r = pdf.density(x);
                return r > 0.0 ? r * std::log(r) : 0.0;
              },
              1.0, std::numeric_limits<double>::infinity())
              .value;
}

}  // namespace

TEST_CASE("discrete Shannon entropy") {
  CHECK(shannon_discrete(Distribution::degenerate(4, 1)) == 0.0);
  CHECK(shannon_discrete(Distribution::uniform(2)) ==
        doctest::Approx(std::log(2.0)).epsilon(1e-14));
  CHECK(shannon_discrete(Distribution({0.25, 0.75})) ==
        doctest::Approx(0.5623351446188083).epsilon(1e-13));
  // bounded by ln(support)
  const Distribution p({0.1, 0.2, 0.3, 0.4});
  CHECK(shannon_discrete(p) <= std::log(4.0));
}

TEST_CASE("Pareto Shannon entropy closed form vs quadrature") {
  CHECK(shannon_pareto(1.0) == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(shannon_pareto(4.0) == doctest::Approx(-0.1362943611198906).epsilon(1e-12));
  CHECK(std::abs(shannon_pareto(3.591)) < 1e-3);
  CHECK(code_of([] { shannon_pareto(0.0); }) == errc::domain);
  CHECK(code_of([] { shannon_pareto(-2.0); }) == errc::domain);

  for (double beta : {1.0, 2.0, 3.591, 4.0, 8.0})
    CHECK(std::abs(shannon_pareto(beta) - shannon_quadrature(beta)) <= 1e-8);
}

TEST_CASE("discrete varentropy") {
  CHECK(varentropy_discrete(Distribution::degenerate(3, 0), 0.4) == 0.0);
  CHECK(varentropy_discrete(Distribution::uniform(2), 0.5) ==
        doctest::Approx(0.8284271247461903).epsilon(1e-13));
  CHECK(code_of([] { varentropy_discrete(Distribution::uniform(2), 0.0); }) == errc::domain);
  CHECK(code_of([] { varentropy_discrete(Distribution::uniform(2), 1.0); }) == errc::domain);
  CHECK(code_of([] { varentropy_discrete(Distribution::uniform(2), -0.3); }) == errc::domain);

  // vanishes as b -> 0 on any distribution
  const Distribution p({0.1, 0.2, 0.3, 0.4});
  CHECK(std::abs(varentropy_discrete(p, 1e-6)) < 1e-5);

  // non-negative, zero only at degeneracy
  Rng rng(17);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<double> probs(2 + rng.below(6));
    for (auto& x : probs) x = rng.exponential();
    const double s = kahan_sum(probs);
    for (auto& x : probs) x /= s;
    const double v = varentropy_discrete(Distribution(probs), rng.uniform(0.01, 0.99));
    CHECK(v > 0.0);
  }
}

TEST_CASE("exponential-gauge Pareto varentropy") {
  CHECK(varentropy_bs_pareto(2.0) == doctest::Approx(0.5));
  CHECK(varentropy_bs_pareto(1e12) == doctest::Approx(0.0).epsilon(1e-11));
  CHECK(code_of([] { varentropy_bs_pareto(0.0); }) == errc::domain);
  // consistency through a = 1/(beta+1): a/(1-a) = 1/beta
  const double a = 1.0 / 3.0;
  CHECK(a / (1.0 - a) == doctest::Approx(varentropy_bs_pareto(2.0)).epsilon(1e-14));
}

TEST_CASE("power-gauge varentropy: quadrature vs closed form") {
  // beta = 2: Z = 1/2, b = 1/3, C = 1 -> 3/2
  {
    VarentropyConfig cfg;
    cfg.b = 1.0 / 3.0;
    cfg.z = 0.5;
    cfg.c = 1.0;
    const double v = varentropy_power_numeric(pareto_density(ParetoModel(1.0, 2.0)), cfg);
    CHECK(v == doctest::Approx(1.5).epsilon(1e-7));
  }
  // beta = 3: Z = 1/3, b = 1/4, C = 1 -> 2/3
  {
    VarentropyConfig cfg;
    cfg.b = 0.25;
    cfg.z = 1.0 / 3.0;
    cfg.c = 1.0;
    const double v = varentropy_power_numeric(pareto_density(ParetoModel(1.0, 3.0)), cfg);
    CHECK(v == doctest::Approx(2.0 / 3.0).epsilon(1e-7));
  }
  // the gauge constant can cancel the integral exactly
  {
    VarentropyConfig cfg;
    cfg.b = 1.0 / 3.0;
    cfg.z = 0.5;
    cfg.c = 2.0;  // equals the integral for beta = 2
    const double v = varentropy_power_numeric(pareto_density(ParetoModel(1.0, 2.0)), cfg);
    CHECK(v == doctest::Approx(0.0).epsilon(1e-8));
  }
  // full grid against the closed form
  for (double beta : {1.5, 2.0, 3.0, 5.0, 10.0}) {
    VarentropyConfig cfg;
    cfg.b = 1.0 / (beta + 1.0);
    cfg.z = 1.0 / beta;
    cfg.c = 1.0;
    const double numeric = varentropy_power_numeric(pareto_density(ParetoModel(1.0, beta)), cfg);
    CHECK(std::abs(numeric - varentropy_power_pareto(beta)) <= 1e-6);
  }
}

TEST_CASE("power-gauge varentropy config validation") {
  const auto pdf = pareto_density(ParetoModel(1.0, 2.0));
  VarentropyConfig cfg;
  cfg.b = 1.5;
  CHECK(code_of([&] { varentropy_power_numeric(pdf, cfg); }) == errc::domain);
  cfg.b = 0.3;
  cfg.z = 0.0;
  CHECK(code_of([&] { varentropy_power_numeric(pdf, cfg); }) == errc::validation);
  cfg.z = 1.0;
  cfg.dimension_constant = 2.0;
  CHECK(code_of([&] { varentropy_power_numeric(pdf, cfg); }) == errc::validation);
}

TEST_CASE("power-gauge varentropy closed form and divergence") {
  CHECK(varentropy_power_pareto(2.0) == doctest::Approx(1.5));
  CHECK(varentropy_power_pareto(1e9) == doctest::Approx(0.0).epsilon(1e-8));
  CHECK(code_of([] { varentropy_power_pareto(1.0 + 1e-10); }) == errc::divergence);
  CHECK(code_of([] { varentropy_power_pareto(0.8); }) == errc::divergence);
  CHECK(code_of([] { varentropy_power_pareto(-1.0); }) == errc::domain);
  // the divergent tail is rejected on the quadrature route too
  VarentropyConfig cfg;
  cfg.b = 0.5;
  cfg.z = 1.0;
  cfg.c = 1.0;
  CHECK(code_of([&] {
          varentropy_power_numeric(pareto_density(ParetoModel(1.0, 1.0)), cfg);
        }) == errc::divergence);
}

TEST_CASE("entropies and efficiency fall together along the tail index") {
  std::vector<double> etas, shannons, varentropies;
  for (int k = 0; k <= 150; ++k) {
    const double beta = 1.05 + (20.0 - 1.05) * k / 150.0;
    etas.push_back(zp_efficiency(beta));
    shannons.push_back(shannon_pareto(beta));
    varentropies.push_back(varentropy_power_pareto(beta));
  }
  for (std::size_t i = 1; i < etas.size(); ++i) {
    CHECK(etas[i] < etas[i - 1]);
    CHECK(shannons[i] < shannons[i - 1]);
    CHECK(varentropies[i] < varentropies[i - 1]);
  }
  CHECK(oracle::spearman(etas, shannons) == doctest::Approx(1.0));
  CHECK(oracle::spearman(etas, varentropies) == doctest::Approx(1.0));
  CHECK(oracle::spearman(shannons, varentropies) == doctest::Approx(1.0));
}

TEST_CASE("varentropy and the efficiency family differ in the small-exponent limit") {
  Rng rng(99);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<double> probs(2 + rng.below(6));
    for (auto& x : probs) x = rng.exponential() + 0.1;
    const double s = kahan_sum(probs);
    for (auto& x : probs) x /= s;
    const Distribution d(probs);
    const double shannon = shannon_discrete(d);
    const double varentropy_limit = varentropy_discrete(d, 1e-8);
    const double efficiency_limit = discrete_efficiency(d, 1e-8);
    CHECK(std::abs(varentropy_limit) < 1e-6);                      // drops to zero
    CHECK(std::abs(efficiency_limit - shannon) < 1e-6);            // tends to Shannon
    CHECK(shannon > 0.05);                                         // non-degenerate inputs
    CHECK(std::abs(varentropy_limit - efficiency_limit) > 0.049);  // the limits differ
  }
}
