#pragma once

#include <stdexcept>
#include <string>

namespace selfsim {

enum class ErrorCode {
  Usage,
  Parse,
  ModelMismatch,
  InvalidSubgroup,
  NotInLattice,
  DomainError,
  InvalidTransversal,
  InconsistentEndomorphism,
  NotAnAutomorphism,
  Unsupported,
  NoFixedElement,
  SearchExhausted,
  InvalidK,
  ResourceCap,
  InsufficientRange,
  Internal,
};

const char* error_code_name(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + message),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace selfsim
