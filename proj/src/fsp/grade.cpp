#include "fsp/grade.hpp"

#include "fsp/error.hpp"

namespace fsp {

Grade Grade::from_units(std::int64_t units) {
  if (units < 0 || units > kScale) {
    throw Error(ErrorCode::GradeOutOfRange,
                "grade units " + std::to_string(units) + " outside [0, " + std::to_string(kScale) + "]");
  }
  return Grade(static_cast<std::int32_t>(units));
}

Grade Grade::parse(std::string_view text) {
  const std::string quoted = "'" + std::string(text) + "'";
  if (text.empty()) throw Error(ErrorCode::InvalidGrade, "empty grade");

  bool negative = false;
  std::size_t pos = 0;
  if (text[0] == '-' || text[0] == '+') {
    negative = text[0] == '-';
    ++pos;
  }

  std::int64_t whole = 0;
  std::size_t whole_digits = 0;
  while (pos < text.size() && text[pos] >= '0' && text[pos] <= '9') {
    // Anything with this many integer digits is out of range anyway; cap to avoid overflow.
    if (whole < 1'000'000) whole = whole * 10 + (text[pos] - '0');
    ++whole_digits;
    ++pos;
  }

  std::int64_t frac = 0;
  int frac_digits = 0;
  if (pos < text.size() && text[pos] == '.') {
    ++pos;
    while (pos < text.size() && text[pos] >= '0' && text[pos] <= '9') {
      if (frac_digits == kMaxFractionDigits) {
        throw Error(ErrorCode::InvalidGrade,
                    "grade " + quoted + " has more than " + std::to_string(kMaxFractionDigits) +
                        " fractional digits");
      }
      frac = frac * 10 + (text[pos] - '0');
      ++frac_digits;
      ++pos;
    }
  }
  if (pos != text.size() || whole_digits + static_cast<std::size_t>(frac_digits) == 0) {
    throw Error(ErrorCode::InvalidGrade, "grade " + quoted + " is not a decimal number");
  }
  for (int d = frac_digits; d < kMaxFractionDigits; ++d) frac *= 10;

  const std::int64_t units = whole * kScale + frac;
  if ((negative && units != 0) || units > kScale) {
    throw Error(ErrorCode::GradeOutOfRange, "grade " + quoted + " outside [0, 1]");
  }
  return Grade(static_cast<std::int32_t>(units));
}

std::string Grade::to_string() const {
  std::string out = std::to_string(units_ / kScale);
  out += '.';
  std::int32_t frac = units_ % kScale;
  std::string digits(kMaxFractionDigits, '0');
  for (int d = kMaxFractionDigits - 1; d >= 0; --d) {
    digits[static_cast<std::size_t>(d)] = static_cast<char>('0' + frac % 10);
    frac /= 10;
  }
  while (digits.size() > 1 && digits.back() == '0') digits.pop_back();
  return out + digits;
}

}  // namespace fsp
