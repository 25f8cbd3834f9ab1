#include "store/error.hpp"

namespace store {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::DuplicateId: return "DuplicateId";
    case ErrorCode::DanglingReference: return "DanglingReference";
    case ErrorCode::NotFound: return "NotFound";
    case ErrorCode::StillReferenced: return "StillReferenced";
    case ErrorCode::InvariantViolation: return "InvariantViolation";
    case ErrorCode::StepOutOfRange: return "StepOutOfRange";
    case ErrorCode::StepNotCurrent: return "StepNotCurrent";
    case ErrorCode::ExitChecksFailed: return "ExitChecksFailed";
    case ErrorCode::StepNotStarted: return "StepNotStarted";
    case ErrorCode::StepNotReady: return "StepNotReady";
    case ErrorCode::OutOfRange: return "OutOfRange";
    case ErrorCode::MissingAssessment: return "MissingAssessment";
    case ErrorCode::SyntaxError: return "SyntaxError";
    case ErrorCode::DuplicateEntryId: return "DuplicateEntryId";
    case ErrorCode::EmptyField: return "EmptyField";
    case ErrorCode::InvalidProject: return "InvalidProject";
    case ErrorCode::IoFailure: return "IoFailure";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::IntegrityMismatch: return "IntegrityMismatch";
    case ErrorCode::UnsupportedSchemaVersion: return "UnsupportedSchemaVersion";
    case ErrorCode::BindFailure: return "BindFailure";
    case ErrorCode::NothingToExport: return "NothingToExport";
  }
  return "Unknown";
}

}  // namespace store
