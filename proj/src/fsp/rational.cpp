#include "fsp/rational.hpp"

#include <charconv>

#include "fsp/error.hpp"

namespace fsp {
namespace {

std::int64_t pow10(int places) {
  std::int64_t p = 1;
  for (int i = 0; i < places; ++i) p *= 10;
  return p;
}

// round(num * scale / den), half away from zero, in 128-bit to keep num * scale exact.
__int128 scaled_round(const Rational& value, std::int64_t scale) {
  const __int128 num = static_cast<__int128>(value.numerator()) * scale;
  const __int128 den = value.denominator();
  const __int128 mag = num < 0 ? -num : num;
  __int128 q = (2 * mag + den) / (2 * den);
  return num < 0 ? -q : q;
}

std::int64_t parse_int(std::string_view text) {
  std::int64_t v = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty()) {
    throw Error(ErrorCode::SyntaxError, "'" + std::string(text) + "' is not an integer");
  }
  return v;
}

}  // namespace

std::string to_fraction_string(const Rational& value) {
  return std::to_string(value.numerator()) + "/" + std::to_string(value.denominator());
}

Rational parse_fraction(std::string_view text) {
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(parse_int(text));
  const std::int64_t den = parse_int(text.substr(slash + 1));
  if (den == 0) throw Error(ErrorCode::SyntaxError, "zero denominator in '" + std::string(text) + "'");
  return Rational(parse_int(text.substr(0, slash)), den);
}

Rational round_to_places(const Rational& value, int places) {
  const std::int64_t scale = pow10(places);
  return Rational(static_cast<std::int64_t>(scaled_round(value, scale)), scale);
}

std::string to_decimal_string(const Rational& value, int places) {
  const std::int64_t scale = pow10(places);
  __int128 q = scaled_round(value, scale);
  const bool negative = q < 0;
  if (negative) q = -q;
  const auto whole = static_cast<std::int64_t>(q / scale);
  auto frac = static_cast<std::int64_t>(q % scale);
  std::string out = negative ? "-" : "";
  out += std::to_string(whole);
  if (places > 0) {
    std::string digits(static_cast<std::size_t>(places), '0');
    for (int d = places - 1; d >= 0; --d) {
      digits[static_cast<std::size_t>(d)] = static_cast<char>('0' + frac % 10);
      frac /= 10;
    }
    out += '.' + digits;
  }
  return out;
}

}  // namespace fsp
