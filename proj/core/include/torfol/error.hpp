#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace torfol {

enum class ErrorCode {
  ZeroVector,
  RayNotRational,
  UnboundedRegion,
  InvalidLattice,
  InvalidCone,
  InvalidFan,
  NotInSupport,
  NotPrimitive,
  ConeNotInFan,
  NotRCartier,
  RequiresSimplicial,
  RequiresCompleteSimplicial,
  InvalidFoliation,
  InvalidDivisor,
  PreconditionViolated,
  HypothesisFailed,
  IndexOutOfRange,
  DomainError,
  ZeroDenominator,
  InternalConsistency,
  ParseError,
  UnknownExample,
  InvalidArgument,
};

std::string_view to_string(ErrorCode code) noexcept;

// All library failures surface as torfol::Error; the code is stable across
// releases, the message is for humans.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
  throw Error(code, what);
}

}  // namespace torfol
