#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

#include "json.hpp"

namespace store {

// Closed set of domain error names. The API and CLI report these verbatim.
enum class ErrorCode {
  DuplicateId,
  DanglingReference,
  NotFound,
  StillReferenced,
  InvariantViolation,
  StepOutOfRange,
  StepNotCurrent,
  ExitChecksFailed,
  StepNotStarted,
  StepNotReady,
  OutOfRange,
  MissingAssessment,
  SyntaxError,
  DuplicateEntryId,
  EmptyField,
  InvalidProject,
  IoFailure,
  ParseError,
  IntegrityMismatch,
  UnsupportedSchemaVersion,
  BindFailure,
  NothingToExport,
};

std::string_view to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message, nlohmann::json details = nlohmann::json::object())
      : std::runtime_error(message), code_(code), details_(std::move(details)) {}

  ErrorCode code() const noexcept { return code_; }
  std::string_view name() const noexcept { return to_string(code_); }
  const nlohmann::json& details() const noexcept { return details_; }

 private:
  ErrorCode code_;
  nlohmann::json details_;
};

}  // namespace store
