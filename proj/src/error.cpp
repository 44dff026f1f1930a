#include "hotelbell/error.hpp"

namespace hotelbell {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::NonMonotoneBoundaries: return "NonMonotoneBoundaries";
    case ErrorKind::ArityMismatch: return "ArityMismatch";
    case ErrorKind::OutOfDomain: return "OutOfDomain";
    case ErrorKind::UndefinedPoint: return "UndefinedPoint";
    case ErrorKind::EmptyDomain: return "EmptyDomain";
    case ErrorKind::AxisMismatch: return "AxisMismatch";
    case ErrorKind::NegativeWeight: return "NegativeWeight";
    case ErrorKind::ZeroTotalMass: return "ZeroTotalMass";
    case ErrorKind::EmptyRect: return "EmptyRect";
    case ErrorKind::DomainMismatch: return "DomainMismatch";
    case ErrorKind::InputOutOfRange: return "InputOutOfRange";
    case ErrorKind::GridMisaligned: return "GridMisaligned";
    case ErrorKind::NonConvergence: return "NonConvergence";
    case ErrorKind::ConfigInvalid: return "ConfigInvalid";
    case ErrorKind::InsufficientTrials: return "InsufficientTrials";
    case ErrorKind::SyntaxError: return "SyntaxError";
    case ErrorKind::UnknownSymbol: return "UnknownSymbol";
    case ErrorKind::Io: return "Io";
  }
  return "Unknown";
}

Error::Error(ErrorKind kind, const std::string& detail)
    : std::runtime_error(std::string(to_string(kind)) + ": " + detail),
      kind_(kind),
      detail_(detail) {}

}  // namespace hotelbell
