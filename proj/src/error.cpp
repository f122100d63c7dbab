#include "husts/error.hpp"

namespace husts {

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidSteps: return "InvalidSteps";
    case ErrorCode::NonRegressive: return "NonRegressive";
    case ErrorCode::NotConvergent: return "NotConvergent";
    case ErrorCode::OutOfRange: return "OutOfRange";
    case ErrorCode::OutOfRegime: return "OutOfRegime";
    case ErrorCode::NotApplicable: return "NotApplicable";
    case ErrorCode::TooLarge: return "TooLarge";
    case ErrorCode::PatternLengthMismatch: return "PatternLengthMismatch";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

}  // namespace husts
