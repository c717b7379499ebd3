#include "kgz/errors.hpp"

#include <sstream>

namespace kgz {

namespace {

std::string describe_pivot(std::size_t row, double pivot) {
  std::ostringstream os;
  os << "singular tridiagonal system: pivot " << pivot << " at row " << row;
  return os.str();
}

std::string describe_residual(double residual) {
  std::ostringstream os;
  os << "ill-conditioned tridiagonal system: relative residual " << residual;
  return os.str();
}

std::string describe_stability(std::size_t node, double c, double tau) {
  std::ostringstream os;
  os << "E-system lost diagonal dominance at node " << node << ": c_j = " << c
     << ", tau = " << tau << " (1/tau^2 + c_j/2 = " << 1.0 / (tau * tau) + 0.5 * c
     << " <= 0)";
  return os.str();
}

}  // namespace

SingularSystemError::SingularSystemError(std::size_t row, double pivot)
    : NumericalError(describe_pivot(row, pivot)), row_(row), pivot_(pivot) {}

IllConditionedError::IllConditionedError(double residual)
    : NumericalError(describe_residual(residual)), residual_(residual) {}

IllConditionedError::IllConditionedError(const std::string& what, double residual)
    : NumericalError(what), residual_(residual) {}

StabilityError::StabilityError(std::size_t node, double coefficient, double tau)
    : NumericalError(describe_stability(node, coefficient, tau)),
      node_(node),
      coefficient_(coefficient),
      tau_(tau) {}

}  // namespace kgz
