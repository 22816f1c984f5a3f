#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include <boost/rational.hpp>

namespace fsp {

/// Reduced exact fraction; ordering uses boost's overflow-safe comparison.
using Rational = boost::rational<std::int64_t>;

/// "p/q" with q > 0, always including the denominator ("6/1").
std::string to_fraction_string(const Rational& value);

/// Parses the output of to_fraction_string (a bare integer is also accepted).
Rational parse_fraction(std::string_view text);

/// Fixed-point decimal rounded half away from zero: 63/13 -> "4.8462" for places = 4.
std::string to_decimal_string(const Rational& value, int places);

/// Rounds to `places` decimals (half away from zero), staying exact.
Rational round_to_places(const Rational& value, int places);

}  // namespace fsp
