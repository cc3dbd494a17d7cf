#ifndef C3MSV_FORMAT_HPP
#define C3MSV_FORMAT_HPP

#include <string>

namespace c3msv {

/// Formats a double with 9 significant digits, trailing zeros kept
/// (e.g. 0.793278182, 1.00000000, 2.85871212e+25). Exact zero prints as
/// 0.000000000 and -infinity as the literal "-inf" so perfect squeezing
/// round-trips through CSV and JSON.
std::string format_value(double value);

/// format_value, then parsed back: the nearest double with at most 9
/// significant digits. Used to keep JSON numeric output stable.
double round_to_output_precision(double value);

}  // namespace c3msv

#endif  // C3MSV_FORMAT_HPP
