#pragma once

#include <stdexcept>
#include <string>

namespace accelscale {

// Every failure raised by the library carries one of these codes so callers
// (and the CLI exit-code mapping) can react without string matching.
enum class ErrorCode {
  NonDivisibleStride,  // space-to-depth block does not divide the resolution
  EmptyModel,          // model has no stages
  InvalidPhi,          // negative phi, or a phi schedule violating its ordering
  UnsupportedOp,       // op kind/parameter outside the supported sets
  BadRange,            // numeric argument outside its valid range / overflow
  Unreachable,         // latency target cannot be reached by scaling
  NonMonotone,         // rounding left every candidate far from the target
  EmptyGrid,           // coefficient grid contains no points
  NoMutationPossible,  // every searchable field has a single allowed value
  SpaceTooLarge,       // exhaustive enumeration over the configured cap
  LevelMismatch,       // compared families have different level names
  ParseError,          // malformed JSON/CSV input or unresolvable file name
};

const char* error_code_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] void raise(ErrorCode code, const std::string& message);

}  // namespace accelscale
