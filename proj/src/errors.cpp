#include "kht/errors.hpp"

namespace kht {

const char* error_name(ErrorKind k) {
  switch (k) {
    case ErrorKind::InvalidDestabilization: return "InvalidDestabilization";
    case ErrorKind::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorKind::MalformedGrid: return "MalformedGrid";
    case ErrorKind::MultiComponent: return "MultiComponent";
    case ErrorKind::PatternMismatch: return "PatternMismatch";
    case ErrorKind::ShapeMismatch: return "ShapeMismatch";
    case ErrorKind::LengthMismatch: return "LengthMismatch";
    case ErrorKind::TooLarge: return "TooLarge";
    case ErrorKind::NotACycle: return "NotACycle";
    case ErrorKind::FiltrationViolation: return "FiltrationViolation";
    case ErrorKind::WindowInvalid: return "WindowInvalid";
    case ErrorKind::NotCancellable: return "NotCancellable";
    case ErrorKind::ReductionStuck: return "ReductionStuck";
    case ErrorKind::VerificationFailed: return "VerificationFailed";
    case ErrorKind::SupportViolation: return "SupportViolation";
    case ErrorKind::ParseError: return "ParseError";
  }
  return "Error";
}

}  // namespace kht
