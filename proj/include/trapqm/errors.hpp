#pragma once

#include <stdexcept>
#include <string>

namespace trapqm {

/// Base of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An argument is outside the domain of the operation (bad coupling, dimension, grid...).
class DomainError : public Error {
 public:
  using Error::Error;
};

class DimensionMismatch : public DomainError {
 public:
  using DomainError::DomainError;
};

/// The inputs were valid but the numerics failed to deliver a result.
class NumericalFailure : public Error {
 public:
  using Error::Error;
};

class NoBracket : public NumericalFailure {
 public:
  using NumericalFailure::NumericalFailure;
};

class NoConvergence : public NumericalFailure {
 public:
  using NumericalFailure::NumericalFailure;
};

class Diverged : public NumericalFailure {
 public:
  using NumericalFailure::NumericalFailure;
};

/// The eigenfunction carries non-negligible weight next to a Dirichlet wall.
class GridTooNarrow : public NumericalFailure {
 public:
  using NumericalFailure::NumericalFailure;
};

}  // namespace trapqm
