#pragma once

#include <stdexcept>
#include <string>

namespace gkm {

// Base for everything a caller can mishandle mathematically, as opposed to
// programming errors which stay plain logic_error/assert.
struct MathDomainError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct InvalidRank : MathDomainError {
  using MathDomainError::MathDomainError;
};

struct GroupTooLarge : MathDomainError {
  using MathDomainError::MathDomainError;
};

struct UnclassifiedType : MathDomainError {
  using MathDomainError::MathDomainError;
};

struct WrongType : MathDomainError {
  using MathDomainError::MathDomainError;
};

struct NotParabolicInvariant : MathDomainError {
  using MathDomainError::MathDomainError;
};

struct VertexModuleViolation : MathDomainError {
  using MathDomainError::MathDomainError;
};

struct UnsupportedLaw : MathDomainError {
  using MathDomainError::MathDomainError;
};

struct IndexMismatch : MathDomainError {
  using MathDomainError::MathDomainError;
};

struct TruncationExceeded : MathDomainError {
  using MathDomainError::MathDomainError;
};

struct NonUnit : MathDomainError {
  using MathDomainError::MathDomainError;
};

}  // namespace gkm
