#pragma once

#include <cstddef>
#include <memory>
#include <span>
#include <vector>

#include "kgz/grid.hpp"

namespace kgz {

/// Sine coefficients indexed l = 1..M-1 (stored at position l-1).
struct SineSpectrum {
  std::vector<double> coeffs;

  std::size_t size() const noexcept { return coeffs.size(); }
  /// Coefficient of mode l, 1 <= l <= M-1.
  double mode(std::size_t l) const { return coeffs.at(l - 1); }
};

/// coeffs[l] = (2/M) sum_{j=1}^{M-1} u_j sin(j l pi / M). O(M^2) reference path.
SineSpectrum dst_forward(const GridFn& u, const Grid1D& grid);

/// u_j = sum_{l=1}^{M-1} coeffs[l] sin(j l pi / M). O(M^2) reference path.
GridFn dst_inverse(const SineSpectrum& s, const Grid1D& grid);

/// FFT-backed type-I sine transform with the same normalisation as
/// dst_forward / dst_inverse. The plan is immutable once built and execute
/// calls may run concurrently.
class SineTransform {
 public:
  explicit SineTransform(std::size_t cells);
  ~SineTransform();
  SineTransform(const SineTransform&) = delete;
  SineTransform& operator=(const SineTransform&) = delete;

  std::size_t cells() const noexcept { return cells_; }

  SineSpectrum forward(const GridFn& u) const;
  GridFn inverse(const SineSpectrum& s) const;

  /// out_j = sum_l coeffs[l] sin(j l pi / M) for the M-1 interior nodes.
  void synthesize(std::span<const double> coeffs, std::span<double> out) const;

 private:
  std::size_t cells_;
  void* plan_ = nullptr;  // fftw_plan
};

}  // namespace kgz
