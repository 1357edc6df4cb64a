#include "heats/error.hpp"

namespace heats {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::UnknownCity: return "UnknownCity";
    case ErrorCode::UnknownDestination: return "UnknownDestination";
    case ErrorCode::UnknownLevels: return "UnknownLevels";
    case ErrorCode::NonPositiveDimension: return "NonPositiveDimension";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::DuplicateDevice: return "DuplicateDevice";
    case ErrorCode::InvariantViolation: return "InvariantViolation";
    case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

}  // namespace heats
