#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "zpeff/distribution.hpp"

namespace zpeff {

struct RankEntry {
  std::size_t rank = 0;   // 1-based, contiguous
  std::string token;      // empty for purely numeric tables
  double frequency = 0.0; // > 0, non-increasing with rank
};

// Ranked frequency table. Ranks run 1..n, frequencies are non-increasing,
// ties in the source counts are broken lexicographically by token.
class RankFrequency {
 public:
  explicit RankFrequency(std::vector<RankEntry> entries);

  static RankFrequency from_counts(std::vector<std::pair<std::string, double>> counts);
  // Parses "token,count" lines; a leading "token,count" header is optional.
  static RankFrequency from_counts_csv(std::string_view text);

  const std::vector<RankEntry>& entries() const noexcept { return entries_; }
  std::size_t size() const noexcept { return entries_.size(); }
  double total() const noexcept { return total_; }

  // Columns: rank,token,frequency
  std::string to_csv() const;

 private:
  std::vector<RankEntry> entries_;
  double total_ = 0.0;
};

struct TokenizerOptions {
  bool fold_case = true;
};

// Positive achievement samples with an optional declared scale parameter;
// when declared, x_min must not exceed the smallest sample.
struct SampleSet {
  std::vector<double> values;
  std::optional<double> x_min;

  explicit SampleSet(std::vector<double> values_, std::optional<double> x_min_ = std::nullopt);
};

struct ZipfFit {
  double alpha_hat = 0.0;
  double x1_hat = 0.0;
  double r_squared = 0.0;
  std::size_t window_lo = 0;  // fitted rank window, inclusive
  std::size_t window_hi = 0;
};

struct HillFit {
  double beta_hat = 0.0;
  double std_err = 0.0;
  double x_min = 0.0;  // resolved scale
};

// Splits UTF-8 text into case-folded tokens on non-alphanumeric boundaries
// and counts them. Invalid byte sequences decode as replacement characters
// (separators). Deterministic; throws errc::empty_input when no token
// survives.
RankFrequency tokenize_corpus(std::string_view text, const TokenizerOptions& opts = {});

// Relative frequencies in rank order.
Distribution empirical_distribution(const RankFrequency& rf);

// Least-squares fit of ln(frequency) on ln(rank) over the rank window
// [window_lo, window_hi]. Passing 0,0 selects the default window
// 5..max(50, n/10), falling back to the full table when that leaves fewer
// than three ranks.
ZipfFit fit_zipf(const RankFrequency& rf, std::size_t window_lo = 0, std::size_t window_hi = 0);

// Maximum-likelihood tail index beta_hat = n / sum ln(x_i/x_min) with
// standard error beta_hat/sqrt(n). The scale is the declared x_min or the
// sample minimum.
HillFit fit_pareto_hill(const SampleSet& s);

// Mean absolute difference Gini estimate, computed via the sorted-order
// identity equivalent to the double sum.
double empirical_gini(const SampleSet& s);

// Share of the total held by the top `fraction` of the sample (fraction in
// (0, 1]; the top ceil(fraction*n) values count).
double top_share(const SampleSet& s, double fraction);

// Numeric sample file format: one value per line, '#' starts a comment,
// surrounding whitespace ignored.
std::vector<double> parse_numeric_lines(std::string_view text);

}  // namespace zpeff
