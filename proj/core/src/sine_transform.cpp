#include "kgz/sine_transform.hpp"

#include <fftw3.h>

#include <cmath>
#include <mutex>
#include <numbers>

#include "kgz/errors.hpp"

namespace kgz {

namespace {

// FFTW's planner is not re-entrant.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

// sin(k pi / M) for k = 0..2M-1; the product j*l is reduced mod 2M so every
// entry of the naive sum comes from one table lookup.
std::vector<double> sine_table(std::size_t cells) {
  std::vector<double> t(2 * cells);
  for (std::size_t k = 0; k < t.size(); ++k) {
    t[k] = std::sin(std::numbers::pi * static_cast<double>(k) / static_cast<double>(cells));
  }
  t[cells] = 0.0;
  return t;
}

}  // namespace

SineSpectrum dst_forward(const GridFn& u, const Grid1D& grid) {
  require_on_grid(u, grid);
  const std::size_t m = grid.cells();
  const auto table = sine_table(m);
  SineSpectrum s{std::vector<double>(m - 1, 0.0)};
  for (std::size_t l = 1; l < m; ++l) {
    double sum = 0.0;
    for (std::size_t j = 1; j < m; ++j) sum += u[j] * table[(j * l) % (2 * m)];
    s.coeffs[l - 1] = 2.0 * sum / static_cast<double>(m);
  }
  return s;
}

GridFn dst_inverse(const SineSpectrum& s, const Grid1D& grid) {
  const std::size_t m = grid.cells();
  if (s.size() != m - 1) throw StructuralError("spectrum length must be M-1");
  const auto table = sine_table(m);
  std::vector<double> u(m + 1, 0.0);
  for (std::size_t j = 1; j < m; ++j) {
    double sum = 0.0;
    for (std::size_t l = 1; l < m; ++l) sum += s.coeffs[l - 1] * table[(j * l) % (2 * m)];
    u[j] = sum;
  }
  return GridFn(std::move(u));
}

SineTransform::SineTransform(std::size_t cells) : cells_(cells) {
  if (cells < 2) throw ParameterError("sine transform needs at least 2 cells");
  const int n = static_cast<int>(cells - 1);
  std::vector<double> in(cells - 1), out(cells - 1);
  std::lock_guard lock(planner_mutex());
  // FFTW_ESTIMATE keeps the plan (and hence every result) deterministic.
  plan_ = fftw_plan_r2r_1d(n, in.data(), out.data(), FFTW_RODFT00,
                           FFTW_ESTIMATE | FFTW_UNALIGNED);
  if (plan_ == nullptr) throw NumericalError("FFTW failed to build a RODFT00 plan");
}

SineTransform::~SineTransform() {
  if (plan_ != nullptr) {
    std::lock_guard lock(planner_mutex());
    fftw_destroy_plan(static_cast<fftw_plan>(plan_));
  }
}

void SineTransform::synthesize(std::span<const double> coeffs, std::span<double> out) const {
  if (coeffs.size() != cells_ - 1 || out.size() != cells_ - 1) {
    throw StructuralError("sine transform length mismatch");
  }
  // RODFT00 computes 2 * sum_l c_l sin(pi j l / M).
  std::vector<double> in(coeffs.begin(), coeffs.end());
  fftw_execute_r2r(static_cast<fftw_plan>(plan_), in.data(), out.data());
  for (double& v : out) v *= 0.5;
}

SineSpectrum SineTransform::forward(const GridFn& u) const {
  if (u.size() != cells_ + 1) throw StructuralError("grid function length mismatch");
  SineSpectrum s{std::vector<double>(cells_ - 1)};
  std::vector<double> in(u.interior().begin(), u.interior().end());
  fftw_execute_r2r(static_cast<fftw_plan>(plan_), in.data(), s.coeffs.data());
  const double scale = 1.0 / static_cast<double>(cells_);
  for (double& c : s.coeffs) c *= scale;
  return s;
}

GridFn SineTransform::inverse(const SineSpectrum& s) const {
  std::vector<double> u(cells_ + 1, 0.0);
  synthesize(s.coeffs, std::span<double>(u).subspan(1, cells_ - 1));
  return GridFn(std::move(u));
}

}  // namespace kgz
