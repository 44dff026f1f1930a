#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace hotelbell {

enum class ErrorKind {
  NonMonotoneBoundaries,
  ArityMismatch,
  OutOfDomain,
  UndefinedPoint,
  EmptyDomain,
  AxisMismatch,
  NegativeWeight,
  ZeroTotalMass,
  EmptyRect,
  DomainMismatch,
  InputOutOfRange,
  GridMisaligned,
  NonConvergence,
  ConfigInvalid,
  InsufficientTrials,
  SyntaxError,
  UnknownSymbol,
  Io,
};

std::string_view to_string(ErrorKind kind) noexcept;

/// Every failure raised by the library carries one of the kinds above; the
/// message is prefixed with the kind name so it survives language bindings.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& detail);

  ErrorKind kind() const noexcept { return kind_; }
  const std::string& detail() const noexcept { return detail_; }

 private:
  ErrorKind kind_;
  std::string detail_;
};

}  // namespace hotelbell
