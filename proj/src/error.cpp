#include "curvkit/error.hpp"

namespace curvkit {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::OutOfDomain: return "out-of-domain";
    case ErrorKind::NonFinite: return "non-finite";
    case ErrorKind::NotPositiveDefinite: return "not-positive-definite";
    case ErrorKind::NonRegularPoint: return "non-regular-point";
    case ErrorKind::PreconditionViolated: return "precondition-violated";
    case ErrorKind::DimensionMismatch: return "dimension-mismatch";
    case ErrorKind::ParameterOutOfRange: return "parameter-out-of-range";
    case ErrorKind::NoTouch: return "no-touch";
    case ErrorKind::EmptyDomain: return "empty-domain";
    case ErrorKind::Parse: return "parse";
    case ErrorKind::Io: return "io";
  }
  return "unknown";
}

Error::Error(ErrorKind kind, const std::string& what)
    : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

}  // namespace curvkit
