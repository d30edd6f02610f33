#include "zpeff/ingest.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <limits>
#include <map>
#include <numeric>
#include <string>

#include "zpeff/errors.hpp"
#include "zpeff/format.hpp"

namespace zpeff {
namespace {

constexpr char32_t kReplacement = 0xFFFD;

// Minimal incremental UTF-8 decoder; malformed sequences yield U+FFFD and
// resynchronize at the next lead byte.
class Utf8Decoder {
 public:
  explicit Utf8Decoder(std::string_view text) : text_(text) {}

  bool next(char32_t& out) {
    if (pos_ >= text_.size()) return false;
    const unsigned char b0 = static_cast<unsigned char>(text_[pos_]);
    if (b0 < 0x80) {
      out = b0;
      ++pos_;
      return true;
    }
    int len = 0;
    char32_t cp = 0;
    if ((b0 & 0xE0) == 0xC0) {
      len = 2;
      cp = b0 & 0x1F;
    } else if ((b0 & 0xF0) == 0xE0) {
      len = 3;
      cp = b0 & 0x0F;
    } else if ((b0 & 0xF8) == 0xF0) {
      len = 4;
      cp = b0 & 0x07;
    } else {
      out = kReplacement;
      ++pos_;
      return true;
    }
    if (pos_ + len > text_.size()) {
      out = kReplacement;
      ++pos_;
      return true;
    }
    for (int k = 1; k < len; ++k) {
      const unsigned char b = static_cast<unsigned char>(text_[pos_ + k]);
      if ((b & 0xC0) != 0x80) {
        out = kReplacement;
        ++pos_;
        return true;
      }
      cp = (cp << 6) | (b & 0x3F);
    }
    // Reject overlong forms and surrogates.
    if ((len == 2 && cp < 0x80) || (len == 3 && cp < 0x800) || (len == 4 && cp < 0x10000) ||
        (cp >= 0xD800 && cp <= 0xDFFF) || cp > 0x10FFFF) {
      out = kReplacement;
      ++pos_;
      return true;
    }
    out = cp;
    pos_ += len;
    return true;
  }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
};

bool is_word_cp(char32_t cp) {
  if (cp < 0x80)
    return (cp >= '0' && cp <= '9') || (cp >= 'a' && cp <= 'z') || (cp >= 'A' && cp <= 'Z');
  if (cp <= 0xBF) return false;                    // C1 controls, Latin-1 punctuation
  if (cp == 0xD7 || cp == 0xF7) return false;      // multiplication / division signs
  if (cp >= 0x2000 && cp <= 0x206F) return false;  // general punctuation
  if (cp >= 0x3000 && cp <= 0x303F) return false;  // CJK punctuation
  if (cp == kReplacement) return false;
  return true;
}

char32_t fold_cp(char32_t cp, bool fold) {
  if (!fold) return cp;
  if (cp >= 'A' && cp <= 'Z') return cp + 0x20;
  if (cp >= 0xC0 && cp <= 0xDE && cp != 0xD7) return cp + 0x20;  // Latin-1 uppercase
  return cp;
}

void append_utf8(std::string& s, char32_t cp) {
  if (cp < 0x80) {
    s += static_cast<char>(cp);
  } else if (cp < 0x800) {
    s += static_cast<char>(0xC0 | (cp >> 6));
    s += static_cast<char>(0x80 | (cp & 0x3F));
  } else if (cp < 0x10000) {
    s += static_cast<char>(0xE0 | (cp >> 12));
    s += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
    s += static_cast<char>(0x80 | (cp & 0x3F));
  } else {
    s += static_cast<char>(0xF0 | (cp >> 18));
    s += static_cast<char>(0x80 | ((cp >> 12) & 0x3F));
    s += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
    s += static_cast<char>(0x80 | (cp & 0x3F));
  }
}

std::string_view trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

std::string format_frequency(double f) {
  if (f == std::floor(f) && std::abs(f) < 9.007199254740992e15)
    return std::to_string(static_cast<long long>(f));
  return format_number(f);
}

}  // namespace

RankFrequency::RankFrequency(std::vector<RankEntry> entries) : entries_(std::move(entries)) {
  if (entries_.empty()) fail(errc::empty_input, "rank table is empty");
  double total = 0.0;
  double prev = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    const auto& e = entries_[i];
    if (e.rank != i + 1) fail(errc::validation, "ranks must be contiguous from 1");
    if (!std::isfinite(e.frequency) || e.frequency <= 0.0)
      fail(errc::validation, "frequencies must be positive");
    if (e.frequency > prev) fail(errc::validation, "frequencies must be non-increasing");
    prev = e.frequency;
    total += e.frequency;
  }
  total_ = total;
}

RankFrequency RankFrequency::from_counts(std::vector<std::pair<std::string, double>> counts) {
  std::sort(counts.begin(), counts.end(), [](const auto& l, const auto& r) {
    if (l.second != r.second) return l.second > r.second;
    return l.first < r.first;
  });
  std::vector<RankEntry> entries;
  entries.reserve(counts.size());
  for (std::size_t i = 0; i < counts.size(); ++i)
    entries.push_back({i + 1, std::move(counts[i].first), counts[i].second});
  return RankFrequency(std::move(entries));
}

RankFrequency RankFrequency::from_counts_csv(std::string_view text) {
  std::vector<std::pair<std::string, double>> counts;
  std::size_t pos = 0;
  bool first_line = true;
  while (pos <= text.size()) {
    const std::size_t nl = text.find('\n', pos);
    std::string_view line = text.substr(pos, nl == std::string_view::npos ? nl : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    line = trim(line);
    if (line.empty() || line.front() == '#') continue;
    const std::size_t comma = line.rfind(',');
    if (comma == std::string_view::npos) fail(errc::parse, "count line lacks a comma");
    std::string_view token = trim(line.substr(0, comma));
    std::string_view count_text = trim(line.substr(comma + 1));
    if (first_line && token == "token" && count_text == "count") {
      first_line = false;
      continue;
    }
    first_line = false;
    char* end = nullptr;
    const std::string count_str(count_text);
    const double count = std::strtod(count_str.c_str(), &end);
    if (end != count_str.c_str() + count_str.size() || !std::isfinite(count) || count <= 0.0)
      fail(errc::parse, "malformed count: " + count_str);
    counts.emplace_back(std::string(token), count);
  }
  if (counts.empty()) fail(errc::empty_input, "count table is empty");
  return from_counts(std::move(counts));
}

std::string RankFrequency::to_csv() const {
  std::string out = "rank,token,frequency\n";
  for (const auto& e : entries_) {
    out += std::to_string(e.rank);
    out += ',';
    out += e.token;
    out += ',';
    out += format_frequency(e.frequency);
    out += '\n';
  }
  return out;
}

SampleSet::SampleSet(std::vector<double> values_, std::optional<double> x_min_)
    : values(std::move(values_)), x_min(x_min_) {
  if (values.empty()) fail(errc::empty_input, "sample set is empty");
  double min_v = std::numeric_limits<double>::infinity();
  for (double v : values) {
    if (!std::isfinite(v) || v <= 0.0)
      fail(errc::validation, "samples must be positive and finite");
    min_v = std::min(min_v, v);
  }
  if (x_min) {
    if (!std::isfinite(*x_min) || *x_min <= 0.0)
      fail(errc::validation, "declared scale must be positive");
    if (*x_min > min_v) fail(errc::validation, "declared scale exceeds the sample minimum");
  }
}

RankFrequency tokenize_corpus(std::string_view text, const TokenizerOptions& opts) {
  std::map<std::string, double> counts;
  Utf8Decoder decoder(text);
  std::string token;
  char32_t cp = 0;
  auto flush = [&]() {
    if (!token.empty()) {
      counts[token] += 1.0;
      token.clear();
    }
  };
  while (decoder.next(cp)) {
    if (is_word_cp(cp)) {
      append_utf8(token, fold_cp(cp, opts.fold_case));
    } else {
      flush();
    }
  }
  flush();
  if (counts.empty()) fail(errc::empty_input, "no tokens in the input");
  std::vector<std::pair<std::string, double>> pairs(counts.begin(), counts.end());
  return RankFrequency::from_counts(std::move(pairs));
}

Distribution empirical_distribution(const RankFrequency& rf) {
  std::vector<double> freqs;
  freqs.reserve(rf.size());
  for (const auto& e : rf.entries()) freqs.push_back(e.frequency);
  return Distribution::normalized(freqs);
}

ZipfFit fit_zipf(const RankFrequency& rf, std::size_t window_lo, std::size_t window_hi) {
  const std::size_t n = rf.size();
  const bool default_window = window_lo == 0 && window_hi == 0;
  if (default_window) {
    window_lo = 5;
    window_hi = std::max<std::size_t>(50, n / 10);
  }
  if (window_lo == 0) fail(errc::validation, "ranks start at 1");
  window_hi = std::min(window_hi, n);
  if (default_window && (window_hi < window_lo || window_hi - window_lo + 1 < 3)) {
    window_lo = 1;  // small tables: fall back to the full range
    window_hi = n;
  }
  if (window_hi < window_lo || window_hi - window_lo + 1 < 3)
    fail(errc::insufficient_data, "fit window must contain at least 3 ranks");

  const auto& entries = rf.entries();
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0, syy = 0.0;
  const double count = static_cast<double>(window_hi - window_lo + 1);
  for (std::size_t r = window_lo; r <= window_hi; ++r) {
    const double lx = std::log(static_cast<double>(r));
    const double ly = std::log(entries[r - 1].frequency);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
    syy += ly * ly;
  }
  const double mx = sx / count, my = sy / count;
  const double vxx = sxx - count * mx * mx;
  const double vxy = sxy - count * mx * my;
  const double vyy = syy - count * my * my;
  const double slope = vxy / vxx;
  const double intercept = my - slope * mx;
  double r2 = 1.0;
  if (vyy > 0.0) {
    double ss_res = 0.0;
    for (std::size_t r = window_lo; r <= window_hi; ++r) {
      const double lx = std::log(static_cast<double>(r));
      const double ly = std::log(entries[r - 1].frequency);
      const double res = ly - (intercept + slope * lx);
      ss_res += res * res;
    }
    r2 = 1.0 - ss_res / vyy;
  }
  return {-slope, std::exp(intercept), r2, window_lo, window_hi};
}

HillFit fit_pareto_hill(const SampleSet& s) {
  const std::size_t n = s.values.size();
  if (n < 2) fail(errc::insufficient_data, "tail fit needs at least 2 samples");
  const double x_min =
      s.x_min.value_or(*std::min_element(s.values.begin(), s.values.end()));
  double log_sum = 0.0;
  for (double v : s.values) {
    if (v < x_min) fail(errc::validation, "sample below the declared scale");
    log_sum += std::log(v / x_min);
  }
  if (!(log_sum > 0.0))
    fail(errc::degenerate, "all samples equal the scale parameter");
  const double beta_hat = static_cast<double>(n) / log_sum;
  return {beta_hat, beta_hat / std::sqrt(static_cast<double>(n)), x_min};
}

double empirical_gini(const SampleSet& s) {
  const std::size_t n = s.values.size();
  if (n < 2) fail(errc::insufficient_data, "Gini needs at least 2 samples");
  std::vector<double> sorted = s.values;
  std::sort(sorted.begin(), sorted.end());
  const double total = kahan_sum(sorted);
  if (!(total > 0.0)) fail(errc::domain, "mean must be positive");
  // Sorted-order identity for the mean absolute difference double sum.
  double weighted = 0.0;
  for (std::size_t k = 0; k < n; ++k)
    weighted += (2.0 * static_cast<double>(k + 1) - static_cast<double>(n) - 1.0) * sorted[k];
  double g = weighted / (static_cast<double>(n) * total);
  if (g < 0.0 && g > -1e-12) g = 0.0;  // rounding on near-equal samples
  return g;
}

double top_share(const SampleSet& s, double fraction) {
  if (!(fraction > 0.0) || fraction > 1.0)
    fail(errc::domain, "fraction must lie in (0, 1]");
  std::vector<double> sorted = s.values;
  std::sort(sorted.begin(), sorted.end(), std::greater<>());
  const std::size_t k =
      std::min<std::size_t>(sorted.size(),
                            static_cast<std::size_t>(
                                std::ceil(fraction * static_cast<double>(sorted.size()))));
  const double total = kahan_sum(sorted);
  if (!(total > 0.0)) fail(errc::domain, "total must be positive");
  double top = 0.0;
  for (std::size_t i = 0; i < k; ++i) top += sorted[i];
  return top / total;
}

std::vector<double> parse_numeric_lines(std::string_view text) {
  std::vector<double> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t nl = text.find('\n', pos);
    std::string_view line = text.substr(pos, nl == std::string_view::npos ? nl : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    const std::size_t hash = line.find('#');
    if (hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const std::string item(line);
    char* end = nullptr;
    const double v = std::strtod(item.c_str(), &end);
    if (end != item.c_str() + item.size() || !std::isfinite(v))
      fail(errc::parse, "malformed numeric line: " + item);
    out.push_back(v);
  }
  return out;
}

}  // namespace zpeff
