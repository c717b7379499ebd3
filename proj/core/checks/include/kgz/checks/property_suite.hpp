#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace kgz::checks {

struct CheckResult {
  std::string name;
  bool passed = false;
  double measured = 0.0;   ///< worst value observed
  double tolerance = 0.0;  ///< bound it was compared against
  std::string detail;
};

/// Fast randomized invariants of the solver stack: summation by parts, DST
/// round trip and Parseval, closed-form H against quadrature, forward/backward
/// reversibility of KGZ and KG-OP, the zero fixed point, Dirichlet zeros and
/// the linear solves against dense LU. Deterministic for a given seed.
std::vector<CheckResult> run_property_suite(std::uint64_t seed = 20240601);

}  // namespace kgz::checks
