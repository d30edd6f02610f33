#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "zpeff/measures.hpp"

namespace zpeff {

// Pareto model with CCDF (x_min/x)^beta on [x_min, inf).
struct ParetoModel {
  double x_min = 1.0;
  double beta = 0.0;

  ParetoModel(double x_min_, double beta_);

  // Loss coefficient a = 1/(beta + 1) of the matching efficiency functional.
  double loss_coefficient() const { return 1.0 / (beta + 1.0); }
};

// Rank law x_r = x1 / r^alpha.
struct ZipfModel {
  double x1 = 0.0;
  double alpha = 0.0;

  ZipfModel(double x1_, double alpha_);
};

// Bijection between the loss coefficient a in (0,1) and the tail index
// beta = 1/a - 1 in (0, inf).
double beta_from_a(double a);
double a_from_beta(double beta);

double pareto_ccdf(const ParetoModel& m, double x);
double pareto_pdf(const ParetoModel& m, double x);

// PdfSpec wrapper for the model density, for use with the continuous
// measures.
PdfSpec pareto_density(const ParetoModel& m);

// Inverse-CDF sampler x = x_min * u^{-1/beta}; deterministic for a fixed
// seed.
std::vector<double> pareto_sample(const ParetoModel& m, std::size_t n, std::uint64_t seed);

// Closed-form efficiency of the Pareto density with unit scale:
// (beta + 1) * (beta^{-1/(beta+1)} * beta/(beta-1) - 1).
// Positive below the zero-crossing tail index, negative above it; diverges
// for beta <= 1 (reported as errc::divergence).
double zp_efficiency(double beta);

// Gini coefficient 1/(2 beta - 1) of the Pareto model; requires beta > 1/2.
double gini_from_beta(double beta);

// First `ranks` points (r, x1/r^alpha) of the rank law.
std::vector<std::pair<std::uint64_t, double>> zipf_curve(const ZipfModel& z, std::size_t ranks);

// The function whose unique root in (0, 1/2) is the loss coefficient of zero
// efficiency: x^x (1-x)^{1-x} - (1 - 2x).
double zero_efficiency_objective(double x);

// Root of zero_efficiency_objective on (0, 1/2); the bracket endpoints are
// sign-checked at call time rather than assumed.
double zero_efficiency_threshold(double tol = 1e-10);

// Tail index where the Pareto differential Shannon entropy crosses zero,
// i.e. the root of ln(beta) = 1 + 1/beta on (1, 10).
double zero_shannon_threshold(double tol = 1e-10);

// JSON round-trip of the model parameters: {"beta": ..., "x_min": ...}.
std::string pareto_to_json(const ParetoModel& m);
ParetoModel pareto_from_json(const std::string& json);

}  // namespace zpeff
