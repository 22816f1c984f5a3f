#include "fsp/error.hpp"

namespace fsp {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::GradeOutOfRange: return "GradeOutOfRange";
    case ErrorCode::InvalidGrade: return "InvalidGrade";
    case ErrorCode::DuplicateId: return "DuplicateId";
    case ErrorCode::InvalidId: return "InvalidId";
    case ErrorCode::EmptyUniverse: return "EmptyUniverse";
    case ErrorCode::EmptyAttributeSet: return "EmptyAttributeSet";
    case ErrorCode::UnknownAlternative: return "UnknownAlternative";
    case ErrorCode::UnknownAttribute: return "UnknownAttribute";
    case ErrorCode::DegenerateScores: return "DegenerateScores";
    case ErrorCode::SyntaxError: return "SyntaxError";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::IoError: return "IoError";
    case ErrorCode::NotFound: return "NotFound";
    case ErrorCode::BindError: return "BindError";
    case ErrorCode::Internal: return "Internal";
  }
  return "Internal";
}

}  // namespace fsp
