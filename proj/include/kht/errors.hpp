#pragma once

#include <stdexcept>
#include <string>

namespace kht {

enum class ErrorKind {
  InvalidDestabilization,
  IndexOutOfRange,
  MalformedGrid,
  MultiComponent,
  PatternMismatch,
  ShapeMismatch,
  LengthMismatch,
  TooLarge,
  NotACycle,
  FiltrationViolation,
  WindowInvalid,
  NotCancellable,
  ReductionStuck,
  VerificationFailed,
  SupportViolation,
  ParseError,
};

const char* error_name(ErrorKind k);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(error_name(kind)) + ": " + what), kind_(kind) {}
  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace kht
