#pragma once

#include <stdexcept>
#include <string>

namespace mvc {

enum class ErrorCode {
  InvalidArgument,
  InvalidDimension,
  DimensionMismatch,
  BudgetExceeded,
  InvalidTolerance,
  BoundaryPoint,
  DegenerateCell,
  DegenerateSlice,
  EmptyDomain,
  Io,
};

const char* to_string(ErrorCode code) noexcept;

// Every failure in the library surfaces as this exception; the C API maps
// the code onto mvc_status.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace mvc
