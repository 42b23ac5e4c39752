#include "lpw/error.hpp"

namespace lpw {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::OmegaNotExpandable: return "OmegaNotExpandable";
    case ErrorCode::CaptureError: return "CaptureError";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::DuplicateLineId: return "DuplicateLineId";
    case ErrorCode::DuplicateAtom: return "DuplicateAtom";
    case ErrorCode::InvalidLevel: return "InvalidLevel";
    case ErrorCode::MissingParameter: return "MissingParameter";
    case ErrorCode::SideConditionViolated: return "SideConditionViolated";
    case ErrorCode::SchemaMismatch: return "SchemaMismatch";
    case ErrorCode::FreeVariableLeak: return "FreeVariableLeak";
    case ErrorCode::NotCheckedYet: return "NotCheckedYet";
    case ErrorCode::BudgetExhausted: return "BudgetExhausted";
    case ErrorCode::NotPropositional: return "NotPropositional";
    case ErrorCode::AtomLimitExceeded: return "AtomLimitExceeded";
    case ErrorCode::UnsupportedLevel: return "UnsupportedLevel";
    case ErrorCode::UnknownName: return "UnknownName";
  }
  return "Unknown";
}

}  // namespace lpw
