#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include <boost/rational.hpp>

namespace poolhire {

// Exact scores and ratios. Comparisons are total, so the strict-score
// assumption can be checked without tolerances.
using Rational = boost::rational<std::int64_t>;

/// Smallest integer n with n >= r.
std::int64_t ceil(const Rational& r);

/// Largest integer n with n <= r.
std::int64_t floor(const Rational& r);

/// ceil(m * count), the rounding used for every fractional reserve.
inline std::int64_t ceil_times(const Rational& m, std::int64_t count) {
  return ceil(m * Rational(count));
}

/// Parses "7", "-3", "1/2" or a finite decimal such as "0.25".
/// Throws std::invalid_argument on anything else.
Rational parse_rational(std::string_view text);

/// "7" or "1/2".
std::string to_string(const Rational& r);

}  // namespace poolhire
