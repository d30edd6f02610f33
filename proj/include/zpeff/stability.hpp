#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "zpeff/distribution.hpp"

namespace zpeff {

// Configuration of the perturbation harness: loss coefficient, support sizes
// to test, L1 perturbation budget, trials per cell, and master seed.
struct StabilityTrialConfig {
  double a = 0.0;
  std::vector<std::size_t> n_values;
  double delta = 0.0;
  std::size_t trials = 0;
  std::uint64_t seed = 0;
};

struct StabilityCell {
  std::size_t n_states = 0;
  double delta = 0.0;
  double max_ratio = 0.0;
  double lemma1_bound = 0.0;   // N^a delta^{1-a} / (N^a - 1)
  double m_delta_bound = 0.0;  // M delta^{1-a}, with M the N-free constant
  bool pass = false;
};

struct StabilityReport {
  double a = 0.0;
  double delta = 0.0;
  double bound_constant = 0.0;  // M
  std::vector<StabilityCell> cells;
  bool passed = false;

  // Columns: N,delta,max_ratio,lemma1_bound,m_delta_bound,pass
  std::string to_csv() const;
  std::string to_json() const;
};

// Maximum efficiency over all distributions on N states: (N^a - 1)/a,
// attained by the uniform distribution.
double efficiency_sup(std::size_t n_states, double a);

// Left and right side of the power-sum perturbation inequality:
// sum |p_i^{1-a} - q_i^{1-a}|  <=  N^a ||p - q||_1^{1-a}.
// Returns {lhs, rhs}; requires matching support sizes.
std::pair<double, double> perturbation_gap(const Distribution& p, const Distribution& q, double a);

// N-free bound constant M = 2^a / (2^a - 1), the supremum of
// x -> x^a/|1 - x^a| on [2, inf).
double stability_bound_constant(double a);

// Normalized efficiency gap |E(p) - E(q)| / E_{N,max} in [0, 1]; undefined
// (degenerate) for N = 1 where the supremum is zero.
double stability_ratio(const Distribution& p, const Distribution& q, double a);

// Monte Carlo harness: per support size, draws `trials` perturbed pairs with
// L1 distance below delta (plus a fixed set of adversarial mass-moving
// pairs), records the worst normalized gap, and compares it to the analytic
// bounds. Deterministic for a fixed seed regardless of execution order.
StabilityReport run_stability_trials(const StabilityTrialConfig& cfg);

}  // namespace zpeff
