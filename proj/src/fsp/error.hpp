#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace fsp {

enum class ErrorCode {
  DimensionMismatch,
  GradeOutOfRange,
  InvalidGrade,
  DuplicateId,
  InvalidId,
  EmptyUniverse,
  EmptyAttributeSet,
  UnknownAlternative,
  UnknownAttribute,
  DegenerateScores,
  SyntaxError,
  InvalidArgument,
  IoError,
  NotFound,
  BindError,
  Internal,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Every failure in the library surfaces as an Error carrying a stable code.
/// `location` is empty unless the error was raised while reading a document
/// (e.g. "row 3, column 4" or "grades[1][2]").
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message, std::string location = {})
      : std::runtime_error(location.empty() ? message : location + ": " + message),
        code_(code),
        detail_(message),
        location_(std::move(location)) {}

  ErrorCode code() const noexcept { return code_; }
  const std::string& detail() const noexcept { return detail_; }
  const std::string& location() const noexcept { return location_; }

  /// Same error re-anchored at a document location.
  Error at(std::string location) const { return Error(code_, detail_, std::move(location)); }

 private:
  ErrorCode code_;
  std::string detail_;
  std::string location_;
};

}  // namespace fsp
