#include "zpeff/stability.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include <json.hpp>

#include "zpeff/errors.hpp"
#include "zpeff/format.hpp"
#include "zpeff/measures.hpp"
#include "zpeff/rng.hpp"

namespace zpeff {
namespace {

void check_a(double a) {
  if (!std::isfinite(a) || a <= 0.0 || a >= 1.0)
    fail(errc::domain, "loss coefficient must lie in (0, 1)");
}

double l1_distance(std::span<const double> p, std::span<const double> q) {
  double d = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) d += std::abs(p[i] - q[i]);
  return d;
}

std::vector<double> dirichlet_point(Rng& rng, std::size_t n) {
  std::vector<double> p(n);
  for (auto& x : p) x = rng.exponential();
  const double total = kahan_sum(p);
  for (auto& x : p) x /= total;
  return p;
}

// Euclidean projection onto the probability simplex.
void project_to_simplex(std::vector<double>& v) {
  std::vector<double> u = v;
  std::sort(u.begin(), u.end(), std::greater<>());
  double cumsum = 0.0;
  double theta = 0.0;
  for (std::size_t j = 0; j < u.size(); ++j) {
    cumsum += u[j];
    const double t = (cumsum - 1.0) / static_cast<double>(j + 1);
    if (u[j] > t) theta = t;
  }
  for (auto& x : v) x = std::max(x - theta, 0.0);
  const double total = kahan_sum(v);
  for (auto& x : v) x /= total;
}

// Base point plus a perturbation drawn uniformly on the L1 ball of radius
// delta, projected back to the simplex; the result is shrunk toward the base
// point if the projection pushed the L1 distance past the budget.
std::vector<double> perturb_within_l1(Rng& rng, const std::vector<double>& p, double delta) {
  const std::size_t n = p.size();
  std::vector<double> e(n);
  double norm = 0.0;
  for (auto& x : e) {
    x = (rng.coin() ? 1.0 : -1.0) * rng.exponential();
    norm += std::abs(x);
  }
  const double radius = delta * std::pow(rng.uniform01(), 1.0 / static_cast<double>(n));
  std::vector<double> q(n);
  for (std::size_t i = 0; i < n; ++i) q[i] = p[i] + e[i] * radius / norm;
  project_to_simplex(q);
  const double d = l1_distance(p, q);
  if (d > delta) {
    const double s = 0.999 * delta / d;
    for (std::size_t i = 0; i < n; ++i) q[i] = p[i] + s * (q[i] - p[i]);
    const double total = kahan_sum(q);
    for (auto& x : q) x /= total;
  }
  return q;
}

// Moves mass m from one coordinate to another, clamped by availability, so
// the pair stays on the simplex with L1 distance exactly 2m.
std::vector<double> move_mass(const std::vector<double>& p, std::size_t from, std::size_t to,
                              double m) {
  std::vector<double> q = p;
  m = std::min(m, q[from]);
  q[from] -= m;
  q[to] += m;
  return q;
}

}  // namespace

double efficiency_sup(std::size_t n_states, double a) {
  check_a(a);
  if (n_states == 0) fail(errc::domain, "support size must be at least 1");
  return (std::pow(static_cast<double>(n_states), a) - 1.0) / a;
}

std::pair<double, double> perturbation_gap(const Distribution& p, const Distribution& q,
                                           double a) {
  check_a(a);
  if (p.size() != q.size()) fail(errc::validation, "support sizes differ");
  const auto ps = p.probs();
  const auto qs = q.probs();
  double lhs = 0.0;
  for (std::size_t i = 0; i < ps.size(); ++i)
    lhs += std::abs(std::pow(ps[i], 1.0 - a) - std::pow(qs[i], 1.0 - a));
  const double rhs = std::pow(static_cast<double>(ps.size()), a) *
                     std::pow(l1_distance(ps, qs), 1.0 - a);
  return {lhs, rhs};
}

double stability_bound_constant(double a) {
  check_a(a);
  const double t = std::pow(2.0, a);
  return t / (t - 1.0);
}

double stability_ratio(const Distribution& p, const Distribution& q, double a) {
  check_a(a);
  if (p.size() != q.size()) fail(errc::validation, "support sizes differ");
  if (p.size() == 1) fail(errc::degenerate, "the efficiency supremum vanishes on one state");
  const double sup = efficiency_sup(p.size(), a);
  const double ep = discrete_efficiency_unchecked(p.probs(), a);
  const double eq = discrete_efficiency_unchecked(q.probs(), a);
  return std::abs(ep - eq) / sup;
}

StabilityReport run_stability_trials(const StabilityTrialConfig& cfg) {
  check_a(cfg.a);
  if (!(cfg.delta > 0.0) || !std::isfinite(cfg.delta))
    fail(errc::validation, "perturbation budget must be positive");
  if (cfg.trials == 0) fail(errc::validation, "at least one trial per cell is required");
  if (cfg.n_values.empty()) fail(errc::validation, "no support sizes given");
  for (std::size_t n : cfg.n_values)
    if (n < 2) fail(errc::validation, "support sizes must be at least 2");

  const double a = cfg.a;
  const double m_const = stability_bound_constant(a);

  StabilityReport report;
  report.a = a;
  report.delta = cfg.delta;
  report.bound_constant = m_const;
  report.passed = true;

  for (std::size_t cell_idx = 0; cell_idx < cfg.n_values.size(); ++cell_idx) {
    const std::size_t n = cfg.n_values[cell_idx];
    const double sup = efficiency_sup(n, a);
    double max_ratio = 0.0;

    auto record_pair = [&](const std::vector<double>& p, const std::vector<double>& q) {
      const double ep = discrete_efficiency_unchecked(p, a);
      const double eq = discrete_efficiency_unchecked(q, a);
      max_ratio = std::max(max_ratio, std::abs(ep - eq) / sup);
    };

    for (std::size_t trial = 0; trial < cfg.trials; ++trial) {
      Rng rng(Rng::derive(cfg.seed, cell_idx, trial));
      const std::vector<double> p = dirichlet_point(rng, n);
      const std::vector<double> q = perturb_within_l1(rng, p, cfg.delta);
      record_pair(p, q);
    }

    // Adversarial mass moves between two coordinates empirically maximize
    // the ratio; they are always run in addition to the random trials.
    const double m = 0.4999 * cfg.delta;
    {
      std::vector<double> uniform(n, 1.0 / static_cast<double>(n));
      record_pair(uniform, move_mass(uniform, 0, 1, m));
    }
    {
      std::vector<double> degenerate(n, 0.0);
      degenerate[0] = 1.0;
      record_pair(degenerate, move_mass(degenerate, 0, n - 1, m));
    }
    {
      const double rest = 1e-9;
      std::vector<double> spiked(n, rest);
      spiked[0] = 1.0 - rest * static_cast<double>(n - 1);
      record_pair(spiked, move_mass(spiked, 0, 1, m));
    }

    StabilityCell cell;
    cell.n_states = n;
    cell.delta = cfg.delta;
    cell.max_ratio = max_ratio;
    const double na = std::pow(static_cast<double>(n), a);
    cell.lemma1_bound = na * std::pow(cfg.delta, 1.0 - a) / (na - 1.0);
    cell.m_delta_bound = m_const * std::pow(cfg.delta, 1.0 - a);
    cell.pass = max_ratio <= cell.m_delta_bound + 1e-12;
    report.passed = report.passed && cell.pass;
    report.cells.push_back(cell);
  }
  return report;
}

std::string StabilityReport::to_csv() const {
  std::string out = "N,delta,max_ratio,lemma1_bound,m_delta_bound,pass\n";
  for (const auto& c : cells) {
    out += std::to_string(c.n_states);
    out += ',';
    out += format_number(c.delta);
    out += ',';
    out += format_number(c.max_ratio);
    out += ',';
    out += format_number(c.lemma1_bound);
    out += ',';
    out += format_number(c.m_delta_bound);
    out += ',';
    out += c.pass ? '1' : '0';
    out += '\n';
  }
  return out;
}

std::string StabilityReport::to_json() const {
  nlohmann::json j;
  j["a"] = a;
  j["delta"] = delta;
  j["bound_constant"] = bound_constant;
  j["passed"] = passed;
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& c : cells) {
    nlohmann::json row;
    row["N"] = c.n_states;
    row["delta"] = c.delta;
    row["max_ratio"] = c.max_ratio;
    row["lemma1_bound"] = c.lemma1_bound;
    row["m_delta_bound"] = c.m_delta_bound;
    row["pass"] = c.pass;
    rows.push_back(row);
  }
  j["cells"] = rows;
  return j.dump();
}

}  // namespace zpeff
