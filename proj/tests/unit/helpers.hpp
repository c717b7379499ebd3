#pragma once

#include <cmath>
#include <span>
#include <vector>

#include "kgz/harness/presets.hpp"
#include "kgz/kgz_scheme.hpp"

namespace kgz::test {

inline double max_abs_diff(std::span<const double> u, std::span<const double> v) {
  double d = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) d = std::max(d, std::abs(u[i] - v[i]));
  return d;
}

inline double max_abs(std::span<const double> u) {
  double d = 0.0;
  for (double x : u) d = std::max(d, std::abs(x));
  return d;
}

/// A small KGZ problem on [-16, 16] that runs in milliseconds.
inline KgzParams small_params(double eps, double h, double tau, double T,
                              harness::Incompatibility ab = {1.0, 0.0}) {
  KgzParams p;
  p.eps = eps;
  p.alpha = ab.alpha;
  p.beta = ab.beta;
  p.grid = Grid1D::with_spacing(-16.0, 16.0, h);
  p.tau = tau;
  p.T = T;
  return p;
}

inline InitialData zero_data() {
  auto z = [](double) { return 0.0; };
  return {z, z, z, z};
}

}  // namespace kgz::test
