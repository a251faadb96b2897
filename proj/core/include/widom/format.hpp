#pragma once

#include <cmath>
#include <cstdio>
#include <string>

namespace widom {

/// Shortest text for a double at 17 significant digits; "inf", "-inf", "nan"
/// for non-finite values.
inline std::string fmt_num(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

}  // namespace widom
