#pragma once

#include <stdexcept>
#include <string>

namespace ecot {

/// Base class for all numeric / structural failures raised by this library.
class EcotError : public std::runtime_error {
public:
  explicit EcotError(const std::string& msg) : std::runtime_error(msg) {}
};

/// The conditioning (given) block is singular or too ill-conditioned to invert.
class SingularConditioningBlock : public EcotError {
public:
  using EcotError::EcotError;
};

/// The future-given-past covariance of the previous iterate is not invertible.
class SingularFutureCovariance : public EcotError {
public:
  using EcotError::EcotError;
};

class DimensionMismatch : public EcotError {
public:
  using EcotError::EcotError;
};

class EmptyIndexSet : public EcotError {
public:
  using EcotError::EcotError;
};

class StepOutOfRange : public EcotError {
public:
  using EcotError::EcotError;
};

/// A kernel-generated covariance matrix failed the positive-definiteness check.
class DegenerateKernelMatrix : public EcotError {
public:
  using EcotError::EcotError;
};

/// A marginal law is degenerate (fails PSD / nondegeneracy requirements).
class DegenerateMarginal : public EcotError {
public:
  using EcotError::EcotError;
};

class ShapeMismatch : public EcotError {
public:
  using EcotError::EcotError;
};

/// Config file could not be parsed.
class ParseError : public EcotError {
public:
  using EcotError::EcotError;
};

/// Config parsed but violates an invariant.
class ValidationError : public EcotError {
public:
  using EcotError::EcotError;
};

}  // namespace ecot
