#pragma once

#include <stdexcept>
#include <string>

namespace equinorm {

struct EquinormError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Mixing objects over different ambient dimensions.
struct DimensionError : EquinormError {
    using EquinormError::EquinormError;
};

/// builtin_rep() called with a name it does not know.
struct UnknownRepError : EquinormError {
    using EquinormError::EquinormError;
};

/// Commutant dimension is not 1, 2 or 4, or the commutant does not have the
/// division-algebra structure expected of an irreducible orthogonal
/// representation.
struct NotIrreducibleError : EquinormError {
    using EquinormError::EquinormError;
};

/// Operation requires a different Schur type than the basis provides.
struct TypeMismatchError : EquinormError {
    using EquinormError::EquinormError;
};

/// Normalization requested for a case the operation does not cover.
struct WrongCaseError : EquinormError {
    using EquinormError::EquinormError;
};

/// Input field is identically zero.
struct ZeroFieldError : EquinormError {
    using EquinormError::EquinormError;
};

/// Renormalization cannot act (leading radial coefficient absent).
struct IneffectiveError : EquinormError {
    using EquinormError::EquinormError;
};

/// Malformed input file or inconsistent system specification.
struct ValidationError : EquinormError {
    using EquinormError::EquinormError;
};

} // namespace equinorm
