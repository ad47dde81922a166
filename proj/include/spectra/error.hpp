#pragma once

#include <stdexcept>
#include <string>

namespace spectra {

/// Bad input: parameters out of range, malformed coefficient data.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A computation on valid input could not be completed.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParameterError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class DomainError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class RangeError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

// Some off-diagonal entry is not strictly positive.
class InvalidMatrixError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class DegenerateMeasureError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class NotPositiveDefiniteError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

// Moment data on (or beyond) the boundary of the moment body.
class BoundaryError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class PoleError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class ConvergenceError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

}  // namespace spectra
