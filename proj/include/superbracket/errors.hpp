#pragma once

#include <stdexcept>
#include <string>

namespace superbracket {

/// Base class of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Shapes or indices that do not fit together.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// Inversion or dual-basis construction hit a singular matrix.
class SingularMatrixError : public Error {
 public:
  using Error::Error;
};

/// A constructor or builder was handed data violating its stated
/// preconditions (parity mismatch, non-invertible epsilon, L_5 != 0, ...).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// A verification step that must succeed for the requested construction
/// failed (for example a quasi-classical certification refused).
class VerificationError : public Error {
 public:
  using Error::Error;
};

/// Malformed input files or arguments.
class InputError : public Error {
 public:
  using Error::Error;
};

/// An O(N^5) identity check was requested above the configured dimension
/// limit (SUPERBRACKET_MAX_DIM, default 12).
class DimensionGuardError : public Error {
 public:
  using Error::Error;
};

}  // namespace superbracket
