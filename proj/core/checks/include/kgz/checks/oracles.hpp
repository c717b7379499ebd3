#pragma once

// Independent reference computations used to verify the solver modules.
// Nothing here shares code paths with the library routines it checks:
// dense LU instead of Thomas elimination, std::sin double sums instead of the
// table/FFT transforms, Gauss-Kronrod quadrature instead of the closed-form
// kernel average.

#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "kgz/grid.hpp"
#include "kgz/initial_layer.hpp"
#include "kgz/kgz_scheme.hpp"
#include "kgz/limit_models.hpp"

namespace kgz::oracle {

/// Dense LU (partial pivoting) solve of the tridiagonal system.
std::vector<double> dense_tridiagonal_solve(std::span<const double> lower,
                                            std::span<const double> diag,
                                            std::span<const double> upper,
                                            std::span<const double> rhs);

/// Dense solve of -delta_x^2 phi = f on the interior.
GridFn dense_poisson(const GridFn& f, const Grid1D& grid);

/// Dense (M+1)x(M+1) second-difference matrix product, boundary rows zero.
GridFn dense_second_difference(const GridFn& u, const Grid1D& grid);

/// (2/M) sum_j u_j sin(j l pi / M) with std::sin in the inner loop.
std::vector<double> naive_dst(const GridFn& u, const Grid1D& grid);

/// G(x_j, t) summed mode by mode from the layer's spectra.
double layer_G(const InitialLayerData& layer, std::size_t j, double t);

/// int_{-1}^{1} (1 - |s|) G(x_j, t + s tau) ds by panelled Gauss-Kronrod
/// quadrature (31 points, non-adaptive) with at least 10 panels per period of
/// the fastest mode.
double quadrature_H(const InitialLayerData& layer, std::size_t j, double t, double tau);

/// One KGZ step with dense solves and mode-by-mode H.
KgzState naive_step(const KgzState& state, const KgzParams& params,
                    const InitialLayerData& layer);

/// A random X_M function with entries uniform in [-1, 1].
GridFn random_grid_fn(const Grid1D& grid, std::mt19937_64& rng);

/// Random spectrum of length n, entries uniform in [-1, 1].
SineSpectrum random_spectrum(std::size_t n, std::mt19937_64& rng);

/// max_j |u_j - v_j| / max(max_j |v_j|, tiny).
double relative_max_diff(std::span<const double> u, std::span<const double> v);

}  // namespace kgz::oracle
