#include "kgz/initial_layer.hpp"

#include <cmath>
#include <numbers>

#include "kgz/errors.hpp"

namespace kgz {

InitialLayerData::InitialLayerData(const Grid1D& grid, double eps, double alpha, double beta,
                                   SineSpectrum w0, SineSpectrum w1)
    : grid_(grid),
      eps_(eps),
      alpha_(alpha),
      beta_(beta),
      w0_(std::move(w0)),
      w1_(std::move(w1)),
      transform_(std::make_shared<const SineTransform>(grid.cells())) {
  if (!(eps > 0.0) || !std::isfinite(eps)) throw ParameterError("eps must be positive");
  const std::size_t modes = grid.interior_size();
  if (w0_.size() != modes || w1_.size() != modes) {
    throw StructuralError("layer spectra must have M-1 coefficients");
  }
  theta_.resize(modes);
  cos_amp_.resize(modes);
  sin_amp_.resize(modes);
  const double eps_a = std::pow(eps, alpha);
  const double eps_b = std::pow(eps, beta);
  for (std::size_t i = 0; i < modes; ++i) {
    const double l = static_cast<double>(i + 1);
    theta_[i] = l * std::numbers::pi / (eps * grid.length());
    cos_amp_[i] = eps_a * w0_.coeffs[i];
    sin_amp_[i] = eps_b * w1_.coeffs[i] / theta_[i];
    if (w0_.coeffs[i] != 0.0 || w1_.coeffs[i] != 0.0) zero_ = false;
  }
}

GridFn InitialLayerData::synthesize(const std::vector<double>& coeffs) const {
  std::vector<double> u(grid_.size(), 0.0);
  transform_->synthesize(coeffs, std::span<double>(u).subspan(1, grid_.interior_size()));
  return GridFn(std::move(u));
}

InitialLayerData prepare_layer(const Grid1D& grid, double eps, double alpha, double beta,
                               const GridFn& w0_samples, const GridFn& w1_samples) {
  if (!(eps > 0.0)) throw ParameterError("eps must be positive");
  require_on_grid(w0_samples, grid);
  require_on_grid(w1_samples, grid);
  const SineTransform transform(grid.cells());
  return InitialLayerData(grid, eps, alpha, beta, transform.forward(w0_samples),
                          transform.forward(w1_samples));
}

GridFn eval_G(const InitialLayerData& layer, double t) {
  if (layer.zero_) return GridFn(layer.grid_);
  const std::size_t modes = layer.theta_.size();
  std::vector<double> c(modes);
  for (std::size_t i = 0; i < modes; ++i) {
    const double phase = layer.theta_[i] * t;
    c[i] = layer.cos_amp_[i] * std::cos(phase) + layer.sin_amp_[i] * std::sin(phase);
  }
  return layer.synthesize(c);
}

GridFn eval_H(const InitialLayerData& layer, double t, double tau) {
  if (!(tau > 0.0)) throw ParameterError("tau must be positive");
  if (layer.zero_) return GridFn(layer.grid_);
  const std::size_t modes = layer.theta_.size();
  std::vector<double> c(modes);
  for (std::size_t i = 0; i < modes; ++i) {
    const double theta = layer.theta_[i];
    const double half = 0.5 * theta * tau;
    const double sinc = std::sin(half) / half;
    const double phase = theta * t;
    c[i] = sinc * sinc *
           (layer.cos_amp_[i] * std::cos(phase) + layer.sin_amp_[i] * std::sin(phase));
  }
  return layer.synthesize(c);
}

double alpha_star(double alpha, double beta) {
  if (!(alpha >= 0.0)) throw ParameterError("alpha must be >= 0");
  if (!(beta >= -1.0)) throw ParameterError("beta must be >= -1");
  return std::min(alpha, 1.0 + beta);
}

}  // namespace kgz
