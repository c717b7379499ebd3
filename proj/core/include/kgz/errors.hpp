#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace kgz {

/// Invalid user-supplied parameter (non-positive eps, misaligned snapshot
/// time, unknown preset, ...). The CLI maps this to exit code 1.
class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Shape mismatch between a grid and a vector that should live on it.
class StructuralError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Base for failures of the numerics themselves. The CLI maps this to exit
/// code 2.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class SingularSystemError : public NumericalError {
 public:
  SingularSystemError(std::size_t row, double pivot);
  std::size_t row() const noexcept { return row_; }
  double pivot() const noexcept { return pivot_; }

 private:
  std::size_t row_;
  double pivot_;
};

class IllConditionedError : public NumericalError {
 public:
  explicit IllConditionedError(double residual);
  IllConditionedError(const std::string& what, double residual);
  double residual() const noexcept { return residual_; }

 private:
  double residual_;
};

/// The implicit E-system lost diagonal dominance: 1/tau^2 + c_j/2 <= 0 at
/// interior node j.
class StabilityError : public NumericalError {
 public:
  StabilityError(std::size_t node, double coefficient, double tau);
  std::size_t node() const noexcept { return node_; }
  double coefficient() const noexcept { return coefficient_; }
  double tau() const noexcept { return tau_; }

 private:
  std::size_t node_;
  double coefficient_;
  double tau_;
};

/// A relative error was requested against a reference with zero norm.
class DegenerateProblemError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

}  // namespace kgz
