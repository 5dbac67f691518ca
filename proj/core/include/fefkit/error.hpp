#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace fefkit {

enum class ErrorKind {
  NotHermitian,
  NoConvergence,
  NotPsd,
  OutOfRange,
  DimensionMismatch,
  InvariantViolation,
  NonOrthonormalEncoding,
  Parse,
};

std::string_view to_string(ErrorKind kind) noexcept;

/// Exception carrying a machine-checkable kind next to the message.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace fefkit
