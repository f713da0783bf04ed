#pragma once

#include <stdexcept>
#include <string>

namespace tslines {

enum class ErrorCode {
  VanishingOnLoop,
  UnresolvedWinding,
  ChartRange,
  BasePointMismatch,
  NotLagrangian,
  OnSeam,
  DegenerateZeroCurve,
  DegenerateQuadratic,
  BadParams,
  FactorizationFailed,
  SingularMatch,
  NotImmersed,
  EmptyMesh,
  NotHyperbolic,
  BadInput,
};

const char* to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace tslines
