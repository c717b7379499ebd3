#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "kgz/kgz_scheme.hpp"

namespace kgz::harness {

/// Names accepted by preset_initial_data, in display order.
std::vector<std::string> preset_names();

/// "gauss_sech": E0 = exp(-x^2) sin x, E1 = sech(x^2/2) cos x,
///               w0 = sech(x^2) cos 3x, w1 = sech(x^2) sin 4x.
/// "bump":       compactly supported profiles built from the smooth step psi.
/// Unknown names raise ParameterError listing the available presets.
InitialData preset_initial_data(std::string_view name);

/// Smooth step psi(x) = phi(x) / (phi(x) + phi(1 - x)), phi(x) = exp(-1/x) for x > 0.
double smooth_step(double x);

/// Incompatibility exponents (alpha, beta).
struct Incompatibility {
  double alpha = 0.0;
  double beta = 0.0;
};

/// "I" -> (1, 0); "II" -> (0, -1). Anything else is a ParameterError.
Incompatibility named_case(std::string_view name);

/// [-30 - 1/eps, 30 + 1/eps].
std::pair<double, double> domain_for_eps(double eps);

}  // namespace kgz::harness
