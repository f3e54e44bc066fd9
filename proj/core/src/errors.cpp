#include "hnls/errors.hpp"

namespace hnls {

const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::InvalidField: return "InvalidField";
    case ErrorKind::InvalidParameter: return "InvalidParameter";
    case ErrorKind::GridMismatch: return "GridMismatch";
    case ErrorKind::Unsupported: return "Unsupported";
    case ErrorKind::NonConvergence: return "NonConvergence";
    case ErrorKind::StepRejected: return "StepRejected";
    case ErrorKind::EmptyLedger: return "EmptyLedger";
    case ErrorKind::InvalidScenario: return "InvalidScenario";
    case ErrorKind::InvalidConfig: return "InvalidConfig";
    case ErrorKind::Io: return "Io";
  }
  return "Unknown";
}

Error::Error(ErrorKind kind, const std::string& what)
    : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

}  // namespace hnls
