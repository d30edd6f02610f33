#include "curves.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include <zpeff.h>

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void require_ok(zpeff_status s, const char* what) {
  if (s != ZPEFF_OK)
    throw std::runtime_error(std::string(what) + ": " + zpeff_last_error());
}

double two_state_efficiency(double p, double a) {
  const double probs[2] = {p, 1.0 - p};
  zpeff_dist* d = nullptr;
  require_ok(zpeff_dist_create(probs, 2, &d), "two-state distribution");
  double eta = 0.0;
  const zpeff_status s = zpeff_discrete_efficiency(d, a, 0, &eta);
  zpeff_dist_destroy(d);
  require_ok(s, "discrete efficiency");
  return eta;
}

CurveTable figure1(int grid) {
  CurveTable t;
  t.name = "two_state_efficiency_vs_p";
  t.metadata = {{"figure", "1"},
                {"grid", std::to_string(grid)},
                {"a_min", "0.1"},
                {"a_max", "0.9"},
                {"a_step", "0.1"}};
  t.columns.push_back("p");
  for (int k = 1; k <= 9; ++k) {
    char buf[16];
    std::snprintf(buf, sizeof buf, "eta_a0.%d", k);
    t.columns.push_back(buf);
  }
  t.data.assign(t.columns.size(), {});
  for (int i = 1; i <= grid; ++i) {
    const double p = static_cast<double>(i) / (grid + 1.0);
    t.data[0].push_back(p);
    for (int k = 1; k <= 9; ++k)
      t.data[k].push_back(two_state_efficiency(p, 0.1 * k));
  }
  return t;
}

CurveTable figure2(int grid) {
  CurveTable t;
  t.name = "zp_efficiency_vs_a";
  t.metadata = {{"figure", "2"},
                {"grid", std::to_string(grid)},
                {"a_min", "0"},
                {"a_max", "0.5"}};
  t.columns = {"a", "eta"};
  t.data.assign(2, {});
  // Divergence markers at both endpoints: eta -> -inf as a -> 0 and
  // eta -> +inf as a -> 1/2.
  t.data[0].push_back(0.0);
  t.data[1].push_back(-kInf);
  for (int i = 1; i <= grid; ++i) {
    const double a = 0.5 * static_cast<double>(i) / (grid + 1.0);
    double beta = 0.0, eta = 0.0;
    require_ok(zpeff_beta_from_a(a, &beta), "beta from a");
    require_ok(zpeff_zp_efficiency(beta, &eta), "zp efficiency");
    t.data[0].push_back(a);
    t.data[1].push_back(eta);
  }
  t.data[0].push_back(0.5);
  t.data[1].push_back(kInf);
  return t;
}

CurveTable beta_sweep(const char* name, int figure, int grid, bool include_beta1_marker) {
  CurveTable t;
  t.name = name;
  t.metadata = {{"figure", std::to_string(figure)},
                {"grid", std::to_string(grid)},
                {"beta_min", "1"},
                {"beta_max", "50"}};
  const bool fig3 = figure == 3;
  const bool fig4 = figure == 4;
  if (fig3)
    t.columns = {"beta", "gini", "eta"};
  else if (fig4)
    t.columns = {"beta", "eta", "shannon"};
  else
    t.columns = {"beta", "eta", "varentropy_bs", "varentropy_power"};
  t.data.assign(t.columns.size(), {});

  auto push_row = [&](double beta, bool marker) {
    double eta = kInf;
    if (!marker) require_ok(zpeff_zp_efficiency(beta, &eta), "zp efficiency");
    std::size_t c = 0;
    t.data[c++].push_back(beta);
    if (fig3) {
      double gini = 0.0;
      require_ok(zpeff_gini_from_beta(beta, &gini), "gini");
      t.data[c++].push_back(gini);
      t.data[c++].push_back(eta);
      return;
    }
    t.data[c++].push_back(eta);
    if (fig4) {
      double s = 0.0;
      require_ok(zpeff_shannon_pareto(beta, &s), "shannon");
      t.data[c++].push_back(s);
      return;
    }
    double vbs = 0.0;
    require_ok(zpeff_varentropy_bs_pareto(beta, &vbs), "varentropy");
    t.data[c++].push_back(vbs);
    double vp = kInf;
    if (!marker) require_ok(zpeff_varentropy_power_pareto(beta, &vp), "varentropy");
    t.data[c++].push_back(vp);
  };

  if (include_beta1_marker) push_row(1.0, true);
  for (int i = 1; i <= grid; ++i)
    push_row(1.0 + 49.0 * static_cast<double>(i) / grid, false);
  return t;
}

}  // namespace

CurveTable emit_curves(int figure, int grid) {
  if (grid < 10) throw std::invalid_argument("grid must be at least 10");
  switch (figure) {
    case 1: return figure1(grid);
    case 2: return figure2(grid);
    case 3: return beta_sweep("zp_efficiency_vs_gini", 3, grid, false);
    case 4: return beta_sweep("zp_efficiency_vs_shannon", 4, grid, false);
    case 5: return beta_sweep("zp_efficiency_vs_varentropy", 5, grid, true);
    default: throw std::invalid_argument("figure must be between 1 and 5");
  }
}
