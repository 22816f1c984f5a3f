#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

namespace fsp {

/// Membership grade in [0,1], stored as an integer count of 1/10000 steps so
/// that comparisons are exact.
class Grade {
 public:
  static constexpr std::int32_t kScale = 10000;
  static constexpr int kMaxFractionDigits = 4;

  constexpr Grade() = default;

  /// Throws GradeOutOfRange unless 0 <= units <= kScale.
  static Grade from_units(std::int64_t units);

  /// Parses plain decimal text ("0", "1.0", "0.25", ".5"). Negative or >1
  /// values raise GradeOutOfRange; anything else malformed raises InvalidGrade.
  static Grade parse(std::string_view text);

  constexpr std::int32_t units() const noexcept { return units_; }

  /// Shortest decimal with at least one fractional digit: "0.0", "0.7", "0.25".
  std::string to_string() const;

  friend constexpr auto operator<=>(Grade, Grade) = default;

 private:
  constexpr explicit Grade(std::int32_t units) : units_(units) {}
  std::int32_t units_ = 0;
};

}  // namespace fsp
