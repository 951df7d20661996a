#include "fuzzcalc/error.hpp"

namespace fuzzcalc {

std::string_view error_name(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::MalformedTriplet: return "MalformedTriplet";
    case ErrorKind::NotNested: return "NotNested";
    case ErrorKind::Crossed: return "Crossed";
    case ErrorKind::GridMismatch: return "GridMismatch";
    case ErrorKind::InvalidGrid: return "InvalidGrid";
    case ErrorKind::ImproperOperand: return "ImproperOperand";
    case ErrorKind::DivisorStraddlesZero: return "DivisorStraddlesZero";
    case ErrorKind::SyntaxError: return "SyntaxError";
    case ErrorKind::UnknownFunction: return "UnknownFunction";
    case ErrorKind::UnboundVariable: return "UnboundVariable";
    case ErrorKind::NotDifferentiable: return "NotDifferentiable";
    case ErrorKind::NoLimit: return "NoLimit";
    case ErrorKind::NotSimplifiable: return "NotSimplifiable";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::Io: return "IoError";
  }
  return "UnknownError";
}

Error::Error(ErrorKind kind, const std::string& message)
    : std::runtime_error(std::string(error_name(kind)) + ": " + message), kind_(kind), detail_(message) {}

SyntaxError::SyntaxError(std::size_t position, const std::string& message)
    : Error(ErrorKind::SyntaxError, message + " at position " + std::to_string(position)),
      position_(position) {}

}  // namespace fuzzcalc
