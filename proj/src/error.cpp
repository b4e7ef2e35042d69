#include "ffr/error.hpp"

namespace ffr {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidParameter: return "invalid-parameter";
    case ErrorCode::AlignmentError: return "alignment-error";
    case ErrorCode::InsufficientSpectrum: return "insufficient-spectrum";
    case ErrorCode::DomainError: return "domain-error";
    case ErrorCode::OutsideCell: return "outside-cell";
    case ErrorCode::UnknownCall: return "unknown-call";
    case ErrorCode::InternalInconsistency: return "internal-inconsistency";
    case ErrorCode::ParseError: return "parse-error";
    case ErrorCode::ValidationError: return "validation-error";
    case ErrorCode::UnknownPreset: return "unknown-preset";
  }
  return "unknown";
}

}  // namespace ffr
