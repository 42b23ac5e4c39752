#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace lpw {

enum class ErrorCode {
  OmegaNotExpandable,
  CaptureError,
  ParseError,
  DuplicateLineId,
  DuplicateAtom,
  InvalidLevel,
  MissingParameter,
  SideConditionViolated,
  SchemaMismatch,
  FreeVariableLeak,
  NotCheckedYet,
  BudgetExhausted,
  NotPropositional,
  AtomLimitExceeded,
  UnsupportedLevel,
  UnknownName,
};

std::string_view to_string(ErrorCode code);

// Every failure the kernel reports outside of a CheckReport is an Error.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace lpw
