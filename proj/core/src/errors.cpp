#include "locsub/errors.hpp"

namespace locsub {

std::string_view to_string(ErrorCategory category) {
  switch (category) {
    case ErrorCategory::kUnknownLabel: return "unknown-label";
    case ErrorCategory::kDuplicateLabel: return "duplicate-label";
    case ErrorCategory::kMissingIdentity: return "missing-identity";
    case ErrorCategory::kEndpointMismatch: return "endpoint-mismatch";
    case ErrorCategory::kIncompleteComposition: return "incomplete-composition";
    case ErrorCategory::kIdentityLaw: return "identity-law";
    case ErrorCategory::kInverseLaw: return "inverse-law";
    case ErrorCategory::kAssociativity: return "associativity";
    case ErrorCategory::kGroupAxiom: return "group-axiom";
    case ErrorCategory::kNotOpen: return "not-open";
    case ErrorCategory::kNotWide: return "not-wide";
    case ErrorCategory::kNotClosed: return "not-closed";
    case ErrorCategory::kNonCovering: return "non-covering";
    case ErrorCategory::kInconsistentAtlas: return "inconsistent-atlas";
    case ErrorCategory::kMismatch: return "mismatch";
    case ErrorCategory::kPrecondition: return "precondition";
    case ErrorCategory::kSchema: return "schema";
  }
  return "unknown";
}

}  // namespace locsub
