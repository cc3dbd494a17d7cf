#include "c3msv/format.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>

namespace c3msv {

std::string format_value(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value < 0.0 ? "-inf" : "inf";
  if (value == 0.0) return "0.000000000";
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%#.9g", value);
  return buf;
}

double round_to_output_precision(double value) {
  if (!std::isfinite(value) || value == 0.0) return value;
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.9g", value);
  return std::strtod(buf, nullptr);
}

}  // namespace c3msv
