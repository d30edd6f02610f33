#include "zpeff/distribution.hpp"

#include <cmath>
#include <string>

#include "zpeff/errors.hpp"

namespace zpeff {

double kahan_sum(std::span<const double> xs) {
  double sum = 0.0;
  double carry = 0.0;
  for (double x : xs) {
    double y = x - carry;
    double t = sum + y;
    carry = (t - sum) - y;
    sum = t;
  }
  return sum;
}

Distribution::Distribution(std::vector<double> probs) : probs_(std::move(probs)) { validate(); }

Distribution::Distribution(std::vector<double> probs, std::vector<double> values)
    : probs_(std::move(probs)), values_(std::move(values)) {
  validate();
}

void Distribution::validate() const {
  if (probs_.empty()) fail(errc::validation, "distribution must have at least one state");
  for (double p : probs_) {
    if (!std::isfinite(p)) fail(errc::validation, "probability is not finite");
    if (p < 0.0) fail(errc::validation, "probability is negative: " + std::to_string(p));
  }
  const double sum = kahan_sum(probs_);
  if (std::abs(sum - 1.0) > kSumTolerance)
    fail(errc::validation, "probabilities sum to " + std::to_string(sum) + ", not 1");
  if (values_) {
    if (values_->size() != probs_.size())
      fail(errc::validation, "values length does not match probabilities");
    for (double v : *values_)
      if (!std::isfinite(v)) fail(errc::validation, "achievement value is not finite");
  }
}

Distribution Distribution::normalized(std::span<const double> weights) {
  Distribution d;
  if (weights.empty()) fail(errc::validation, "cannot normalize an empty weight vector");
  for (double w : weights) {
    if (!std::isfinite(w) || w < 0.0) fail(errc::validation, "weights must be finite and >= 0");
  }
  const double total = kahan_sum(weights);
  if (!(total > 0.0)) fail(errc::validation, "weights must have a positive total");
  d.probs_.reserve(weights.size());
  for (double w : weights) d.probs_.push_back(w / total);
  d.validate();
  return d;
}

Distribution Distribution::normalized(std::span<const double> weights,
                                      std::span<const double> values) {
  Distribution d = normalized(weights);
  d.values_.emplace(values.begin(), values.end());
  d.validate();
  return d;
}

Distribution Distribution::uniform(std::size_t n) {
  if (n == 0) fail(errc::validation, "uniform distribution needs n >= 1");
  Distribution d;
  d.probs_.assign(n, 1.0 / static_cast<double>(n));
  d.validate();
  return d;
}

Distribution Distribution::degenerate(std::size_t n, std::size_t occupied_index) {
  if (n == 0) fail(errc::validation, "degenerate distribution needs n >= 1");
  if (occupied_index >= n) fail(errc::validation, "occupied index out of range");
  Distribution d;
  d.probs_.assign(n, 0.0);
  d.probs_[occupied_index] = 1.0;
  return d;
}

std::span<const double> Distribution::values() const {
  if (!values_) fail(errc::validation, "distribution carries no achievement values");
  return *values_;
}

double Distribution::prob(std::size_t i) const {
  if (i >= probs_.size()) fail(errc::validation, "state index out of range");
  return probs_[i];
}

std::size_t Distribution::support_size() const noexcept {
  std::size_t count = 0;
  for (double p : probs_)
    if (p > 0.0) ++count;
  return count;
}

double Distribution::mean() const {
  const auto vals = values();
  double m = 0.0;
  for (std::size_t i = 0; i < probs_.size(); ++i) m += probs_[i] * vals[i];
  return m;
}

}  // namespace zpeff
