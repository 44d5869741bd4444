#pragma once

#include <cmath>
#include <cstdio>
#include <string>

namespace rlws::io {

inline constexpr const char* kToolName = "rlws";
inline constexpr const char* kToolVersion = "0.1.0";

/// Shortest "%.<digits>g" rendering; nan/inf spelled out.
inline std::string format_g(double x, int digits) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, x);
  return buf;
}

/// Round-trip decimal (17 significant digits), used for CSV.
inline std::string format_exact(double x) { return format_g(x, 17); }

/// Fixed-point with `decimals` places, used for SVG coordinates. Negative zero
/// prints as zero so output does not depend on the sign of tiny values.
inline std::string format_fixed(double x, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, x);
  std::string s = buf;
  if (s.front() == '-' && s.find_first_not_of("-0.") == std::string::npos) s.erase(0, 1);
  return s;
}

}  // namespace rlws::io
