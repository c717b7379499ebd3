#pragma once

#include <memory>
#include <vector>

#include "kgz/grid.hpp"
#include "kgz/sine_transform.hpp"

namespace kgz {

/// Sine-spectral representation of the initial layer G, the solution of
///
///   G_tt - (1/eps^2) G_xx = 0 on (a, b),  G(a) = G(b) = 0,
///   G(x, 0) = eps^alpha w0(x),  G_t(x, 0) = eps^beta w1(x),
///
/// truncated to the M-1 sine modes the grid carries. Each mode is integrated
/// exactly in time. Immutable after construction.
class InitialLayerData {
 public:
  InitialLayerData(const Grid1D& grid, double eps, double alpha, double beta,
                   SineSpectrum w0, SineSpectrum w1);

  const Grid1D& grid() const noexcept { return grid_; }
  double eps() const noexcept { return eps_; }
  double alpha() const noexcept { return alpha_; }
  double beta() const noexcept { return beta_; }
  /// theta_l = l pi / (eps (b - a)), stored at l-1.
  const std::vector<double>& theta() const noexcept { return theta_; }
  const SineSpectrum& w0() const noexcept { return w0_; }
  const SineSpectrum& w1() const noexcept { return w1_; }
  /// True when every coefficient of both spectra is zero (G vanishes identically).
  bool is_zero() const noexcept { return zero_; }
  /// eps > 1 is accepted but lies outside the range the scheme is analysed for.
  bool outside_analysis_range() const noexcept { return eps_ > 1.0; }

  /// Nodal values of sum_l c_l sin(j l pi / M).
  GridFn synthesize(const std::vector<double>& coeffs) const;

 private:
  Grid1D grid_;
  double eps_;
  double alpha_;
  double beta_;
  std::vector<double> theta_;
  SineSpectrum w0_;
  SineSpectrum w1_;
  // eps^alpha * w0_l and eps^beta * w1_l / theta_l.
  std::vector<double> cos_amp_;
  std::vector<double> sin_amp_;
  bool zero_ = true;
  std::shared_ptr<const SineTransform> transform_;

  friend GridFn eval_G(const InitialLayerData&, double);
  friend GridFn eval_H(const InitialLayerData&, double, double);
};

/// Transforms the w0/w1 samples and builds the layer. eps <= 0 is a
/// ParameterError; eps > 1 proceeds (see outside_analysis_range()).
InitialLayerData prepare_layer(const Grid1D& grid, double eps, double alpha, double beta,
                               const GridFn& w0_samples, const GridFn& w1_samples);

/// G(x_j, t) from the closed-form modal solution.
GridFn eval_G(const InitialLayerData& layer, double t);

/// H_j = int_{-1}^{1} (1 - |s|) G(x_j, t + s tau) ds, evaluated exactly per
/// mode: the kernel contributes (sin(theta tau / 2) / (theta tau / 2))^2.
GridFn eval_H(const InitialLayerData& layer, double t, double tau);

/// min(alpha, 1 + beta); requires alpha >= 0 and beta >= -1.
double alpha_star(double alpha, double beta);

}  // namespace kgz
