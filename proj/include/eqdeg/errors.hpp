#pragma once

#include <stdexcept>
#include <string>

namespace eqdeg {

// Input or parameter rejected before computation (CLI exit code 2).
class ValidationError : public std::runtime_error {
 public:
  ValidationError(const std::string& module, const std::string& what)
      : std::runtime_error(module + ": " + what) {}
};

class InvalidParameter : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class PreconditionViolation : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class Unsupported : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

// Failure during a computation on valid input (CLI exit code 3).
class ComputationError : public std::runtime_error {
 public:
  ComputationError(const std::string& module, const std::string& what)
      : std::runtime_error(module + ": " + what) {}
};

class LatticeIncomplete : public ComputationError {
 public:
  using ComputationError::ComputationError;
};

class InternalConsistency : public ComputationError {
 public:
  using ComputationError::ComputationError;
};

class ConvergenceFailure : public ComputationError {
 public:
  ConvergenceFailure(const std::string& module, const std::string& what, double residual)
      : ComputationError(module, what), final_residual(residual) {}
  double final_residual;
};

class DegenerateSymmetry : public ComputationError {
 public:
  using ComputationError::ComputationError;
};

}  // namespace eqdeg
