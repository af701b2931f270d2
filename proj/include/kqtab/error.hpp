#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace kqtab {

enum class ErrorCode {
  NonPositive,
  EvenQ,
  BoundExceeded,
  BadModulus,
  InvalidSpec,
  NotPrimitiveRoot,
  Undecided,
  NotTwoRegular,
  InadmissibleQ,
  NegativeDegree,
  OddM,
  EvenN,
  DegreeOutOfRange,
  EmptyWindow,
  NotASummand,
  TruncationMismatch,
  TruncationTooSmall,
  Parse,
};

std::string_view error_name(ErrorCode code) noexcept;

// All library failures are reported through this type; callers switch on code().
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(error_name(code)) + ": " + message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace kqtab
