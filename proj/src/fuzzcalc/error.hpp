#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace fuzzcalc {

enum class ErrorKind {
  MalformedTriplet,
  NotNested,
  Crossed,
  GridMismatch,
  InvalidGrid,
  ImproperOperand,
  DivisorStraddlesZero,
  SyntaxError,
  UnknownFunction,
  UnboundVariable,
  NotDifferentiable,
  NoLimit,
  NotSimplifiable,
  InvalidArgument,
  Io,
};

// Stable name used on stderr by the CLI and by fc_status_name().
std::string_view error_name(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message);

  ErrorKind kind() const noexcept { return kind_; }
  // Message without the leading error name.
  const std::string& detail() const noexcept { return detail_; }

 private:
  ErrorKind kind_;
  std::string detail_;
};

class SyntaxError : public Error {
 public:
  SyntaxError(std::size_t position, const std::string& message);

  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

}  // namespace fuzzcalc
