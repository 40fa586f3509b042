#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace epilim {

enum class ErrorCode {
  OutOfDomain,
  ImproperInput,
  BadParameter,
  EmptySet,
  NotConvex,
  EmptyWindow,
  WindowTooSmall,
  HorizonExceeded,
  NotFound,
  ExtendedArithmetic,
  Usage,
  Io,
};

std::string_view to_string(ErrorCode code);

/// Exception carrying a machine-checkable error code. Every failure mode of
/// the library is reported through this type.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace epilim
