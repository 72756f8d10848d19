#pragma once

#include <stdexcept>
#include <string>

namespace iet {

enum class ErrorCode {
  kParse,
  kDomain,
  kDivisionByZero,
  kFieldMismatch,
  kStepCapExceeded,
  kPrecondition,
  kConfig,
};

/// Single exception type for the library; the code drives the C API status
/// and the CLI exit code.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace iet
