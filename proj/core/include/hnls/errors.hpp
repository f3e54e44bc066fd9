#pragma once

#include <stdexcept>
#include <string>

namespace hnls {

enum class ErrorKind {
  InvalidField,
  InvalidParameter,
  GridMismatch,
  Unsupported,
  NonConvergence,
  StepRejected,
  EmptyLedger,
  InvalidScenario,
  InvalidConfig,
  Io,
};

const char* to_string(ErrorKind kind) noexcept;

/// Base of every exception thrown by the library. The kind is kept so the
/// runner can translate failures into process exit codes.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what);
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

#define HNLS_DECLARE_ERROR(Name)                                  \
  class Name : public Error {                                     \
   public:                                                        \
    explicit Name(const std::string& what)                        \
        : Error(ErrorKind::Name, what) {}                         \
  }

HNLS_DECLARE_ERROR(InvalidField);
HNLS_DECLARE_ERROR(InvalidParameter);
HNLS_DECLARE_ERROR(GridMismatch);
HNLS_DECLARE_ERROR(Unsupported);
HNLS_DECLARE_ERROR(NonConvergence);
HNLS_DECLARE_ERROR(StepRejected);
HNLS_DECLARE_ERROR(EmptyLedger);
HNLS_DECLARE_ERROR(InvalidScenario);
HNLS_DECLARE_ERROR(InvalidConfig);

#undef HNLS_DECLARE_ERROR

class IoError : public Error {
 public:
  explicit IoError(const std::string& what) : Error(ErrorKind::Io, what) {}
};

}  // namespace hnls
