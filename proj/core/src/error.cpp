#include "epilim/error.hpp"

namespace epilim {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::OutOfDomain: return "OutOfDomain";
    case ErrorCode::ImproperInput: return "ImproperInput";
    case ErrorCode::BadParameter: return "BadParameter";
    case ErrorCode::EmptySet: return "EmptySet";
    case ErrorCode::NotConvex: return "NotConvex";
    case ErrorCode::EmptyWindow: return "EmptyWindow";
    case ErrorCode::WindowTooSmall: return "WindowTooSmall";
    case ErrorCode::HorizonExceeded: return "HorizonExceeded";
    case ErrorCode::NotFound: return "NotFound";
    case ErrorCode::ExtendedArithmetic: return "ExtendedArithmetic";
    case ErrorCode::Usage: return "Usage";
    case ErrorCode::Io: return "Io";
  }
  return "Unknown";
}

}  // namespace epilim
