#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace zpeff {

// Compensated (Kahan) summation; keeps normalization checks meaningful for
// large supports.
double kahan_sum(std::span<const double> xs);

// Finite probability vector, optionally paired with achievement values.
//
// Probabilities must be non-negative and sum to one within kSumTolerance.
// Construction never renormalizes silently; use Distribution::normalized to
// renormalize explicitly.
class Distribution {
 public:
  static constexpr double kSumTolerance = 1e-12;

  explicit Distribution(std::vector<double> probs);
  Distribution(std::vector<double> probs, std::vector<double> values);

  // Explicit renormalization of non-negative weights (weights need not sum
  // to one; they must be finite, non-negative, with a positive total).
  static Distribution normalized(std::span<const double> weights);
  static Distribution normalized(std::span<const double> weights, std::span<const double> values);

  static Distribution uniform(std::size_t n);
  static Distribution degenerate(std::size_t n, std::size_t occupied_index);

  std::span<const double> probs() const noexcept { return probs_; }
  bool has_values() const noexcept { return values_.has_value(); }
  std::span<const double> values() const;  // throws validation error if absent

  std::size_t size() const noexcept { return probs_.size(); }
  double prob(std::size_t i) const;

  // Number of strictly positive states.
  std::size_t support_size() const noexcept;

  // Mean achievement; requires values.
  double mean() const;

 private:
  Distribution() = default;
  void validate() const;

  std::vector<double> probs_;
  std::optional<std::vector<double>> values_;
};

}  // namespace zpeff
