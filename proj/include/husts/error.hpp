#pragma once

#include <stdexcept>
#include <string>

namespace husts {

enum class ErrorCode {
  InvalidSteps,
  NonRegressive,
  NotConvergent,
  OutOfRange,
  OutOfRegime,
  NotApplicable,
  TooLarge,
  PatternLengthMismatch,
  InvalidArgument,
};

const char* to_string(ErrorCode code) noexcept;

// Single exception type for the library; the C layer maps `code()` onto
// husts_status values.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace husts
