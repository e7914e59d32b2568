#pragma once

#include <string>

namespace ahp {

/// Fixed-point rendering with half-up rounding applied to the shortest
/// round-trip decimal form of `value`, so 0.0645 renders as "0.065" even
/// though its binary value is not exactly 0.0645. Halves round away from zero.
std::string format_half_up(double value, int decimals);

/// Numeric value of format_half_up; for display paths only.
double round_half_up(double value, int decimals);

/// Shortest decimal string that parses back to exactly `value`.
std::string format_roundtrip(double value);

}  // namespace ahp
