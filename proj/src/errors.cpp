#include "accelscale/errors.hpp"

namespace accelscale {

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::NonDivisibleStride: return "NonDivisibleStride";
    case ErrorCode::EmptyModel: return "EmptyModel";
    case ErrorCode::InvalidPhi: return "InvalidPhi";
    case ErrorCode::UnsupportedOp: return "UnsupportedOp";
    case ErrorCode::BadRange: return "BadRange";
    case ErrorCode::Unreachable: return "Unreachable";
    case ErrorCode::NonMonotone: return "NonMonotone";
    case ErrorCode::EmptyGrid: return "EmptyGrid";
    case ErrorCode::NoMutationPossible: return "NoMutationPossible";
    case ErrorCode::SpaceTooLarge: return "SpaceTooLarge";
    case ErrorCode::LevelMismatch: return "LevelMismatch";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "UnknownError";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(error_code_name(code)) + ": " + message),
      code_(code) {}

void raise(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

}  // namespace accelscale
