#include "kgz/harness/presets.hpp"

#include <cmath>
#include <numbers>

#include "kgz/errors.hpp"

namespace kgz::harness {

namespace {

double sech(double x) { return 1.0 / std::cosh(x); }

double phi(double x) { return x > 0.0 ? std::exp(-1.0 / x) : 0.0; }

InitialData gauss_sech() {
  return {
      [](double x) { return std::exp(-x * x) * std::sin(x); },
      [](double x) { return sech(0.5 * x * x) * std::cos(x); },
      [](double x) { return sech(x * x) * std::cos(3.0 * x); },
      [](double x) { return sech(x * x) * std::sin(4.0 * x); },
  };
}

InitialData bump() {
  return {
      [](double x) {
        return 0.5 * smooth_step((x + 15.0) / 8.0) * smooth_step((15.0 - x) / 7.0) *
               std::cos(0.5 * x);
      },
      [](double x) {
        return 0.5 * smooth_step((x + 10.0) / 5.0) * smooth_step((10.0 - x) / 5.0) *
               std::sin(0.5 * x);
      },
      [](double x) {
        return smooth_step((x + 18.0) / 10.0) * smooth_step((18.0 - x) / 9.0) *
               std::sin(2.0 * x + std::numbers::pi / 6.0);
      },
      [](double x) { return std::exp(-x * x / 3.0) * std::sin(2.0 * x); },
  };
}

}  // namespace

std::vector<std::string> preset_names() { return {"gauss_sech", "bump"}; }

double smooth_step(double x) {
  const double p = phi(x);
  if (p == 0.0) return 0.0;
  return p / (p + phi(1.0 - x));
}

InitialData preset_initial_data(std::string_view name) {
  if (name == "gauss_sech") return gauss_sech();
  if (name == "bump") return bump();
  std::string msg = "unknown preset '" + std::string(name) + "'; available:";
  for (const auto& n : preset_names()) msg += " " + n;
  throw ParameterError(msg);
}

Incompatibility named_case(std::string_view name) {
  if (name == "I") return {1.0, 0.0};
  if (name == "II") return {0.0, -1.0};
  throw ParameterError("unknown case '" + std::string(name) + "'; expected I, II or custom");
}

std::pair<double, double> domain_for_eps(double eps) {
  if (!(eps > 0.0) || !std::isfinite(eps)) throw ParameterError("eps must be positive");
  const double half = 30.0 + 1.0 / eps;
  return {-half, half};
}

}  // namespace kgz::harness
