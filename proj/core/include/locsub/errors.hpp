#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace locsub {

/// Category attached to every ValidationError. The CLI prints it verbatim.
enum class ErrorCategory {
  kUnknownLabel,
  kDuplicateLabel,
  kMissingIdentity,
  kEndpointMismatch,
  kIncompleteComposition,
  kIdentityLaw,
  kInverseLaw,
  kAssociativity,
  kGroupAxiom,
  kNotOpen,
  kNotWide,
  kNotClosed,
  kNonCovering,
  kInconsistentAtlas,
  kMismatch,
  kPrecondition,
  kSchema,
};

std::string_view to_string(ErrorCategory category);

/// Input violates a structural invariant (bad table, unknown label, ...).
class ValidationError : public std::runtime_error {
 public:
  ValidationError(ErrorCategory category, const std::string& message)
      : std::runtime_error(message), category_(category) {}

  ErrorCategory category() const noexcept { return category_; }

 private:
  ErrorCategory category_;
};

/// A configured enumeration or size bound was exceeded. Never silently
/// truncated.
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An internal cross-check failed (fast algorithm disagrees with an oracle).
class InvariantError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace locsub
