#pragma once

#include <cmath>
#include <cstdio>
#include <string>

namespace zpeff {

// Shared CSV number formatting: 9 significant digits, '.' decimal point,
// divergent values spelled as signed "inf".
inline std::string format_number(double v, int significant_digits = 9) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (std::isnan(v)) return "nan";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", significant_digits, v);
  return buf;
}

// Full-precision variant for machine-readable payloads.
inline std::string format_number_full(double v) { return format_number(v, 17); }

}  // namespace zpeff
