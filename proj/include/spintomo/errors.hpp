#pragma once

#include <stdexcept>
#include <string>

namespace spintomo {

// Base of every error the numerical core throws. The C API maps each
// subclass to a distinct status code.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Operand dimensions do not conform.
class ShapeError : public Error {
 public:
  using Error::Error;
};

// Argument outside the mathematical domain (bad label, phi out of range,
// non-Hermitian input, non-orthogonal settings, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

// Reconstruction design matrix is rank deficient.
class IllPosedError : public Error {
 public:
  using Error::Error;
};

// A computed value broke an invariant it should hold (e.g. a probability
// below the clamp window).
class InvariantError : public Error {
 public:
  using Error::Error;
};

// An empirical provider was queried at settings it has no data for.
class MissingDataError : public Error {
 public:
  using Error::Error;
};

// Malformed serialized input.
class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace spintomo
