#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace curvkit {

enum class ErrorKind {
  OutOfDomain,
  NonFinite,
  NotPositiveDefinite,
  NonRegularPoint,
  PreconditionViolated,
  DimensionMismatch,
  ParameterOutOfRange,
  NoTouch,
  EmptyDomain,
  Parse,
  Io,
};

std::string_view to_string(ErrorKind kind);

/// Single exception type for the library; `kind()` distinguishes the failure.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what);

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace curvkit
