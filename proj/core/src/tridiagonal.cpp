#include "kgz/tridiagonal.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "kgz/errors.hpp"

namespace kgz {

double tridiagonal_residual(std::span<const double> lower, std::span<const double> diag,
                            std::span<const double> upper, std::span<const double> x,
                            std::span<const double> rhs) {
  const std::size_t n = diag.size();
  double res = 0.0;
  double scale = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double ax = diag[i] * x[i];
    double abs_ax = std::abs(diag[i] * x[i]);
    if (i > 0) {
      ax += lower[i] * x[i - 1];
      abs_ax += std::abs(lower[i] * x[i - 1]);
    }
    if (i + 1 < n) {
      ax += upper[i] * x[i + 1];
      abs_ax += std::abs(upper[i] * x[i + 1]);
    }
    res = std::max(res, std::abs(ax - rhs[i]));
    scale = std::max(scale, abs_ax + std::abs(rhs[i]));
  }
  return res / std::max(scale, std::numeric_limits<double>::min());
}

std::vector<double> solve_tridiagonal(std::span<const double> lower,
                                      std::span<const double> diag,
                                      std::span<const double> upper,
                                      std::span<const double> rhs, PivotPolicy policy) {
  const std::size_t n = diag.size();
  if (lower.size() != n || upper.size() != n || rhs.size() != n) {
    throw StructuralError("tridiagonal bands and rhs must share one length");
  }
  if (n == 0) return {};

  if (policy == PivotPolicy::require_dominance) {
    for (std::size_t i = 0; i < n; ++i) {
      const double off = (i > 0 ? std::abs(lower[i]) : 0.0) +
                         (i + 1 < n ? std::abs(upper[i]) : 0.0);
      const double margin = std::abs(diag[i]) - off;
      if (!(margin > 0.0)) {
        throw IllConditionedError("tridiagonal system is not strictly diagonally dominant at row " +
                                      std::to_string(i),
                                  margin);
      }
    }
  }

  std::vector<double> c(n);
  std::vector<double> x(n);
  double pivot = diag[0];
  if (pivot == 0.0 || !std::isfinite(pivot)) throw SingularSystemError(0, pivot);
  c[0] = n > 1 ? upper[0] / pivot : 0.0;
  x[0] = rhs[0] / pivot;
  for (std::size_t i = 1; i < n; ++i) {
    pivot = diag[i] - lower[i] * c[i - 1];
    if (pivot == 0.0 || !std::isfinite(pivot)) throw SingularSystemError(i, pivot);
    c[i] = i + 1 < n ? upper[i] / pivot : 0.0;
    x[i] = (rhs[i] - lower[i] * x[i - 1]) / pivot;
  }
  for (std::size_t i = n - 1; i-- > 0;) x[i] -= c[i] * x[i + 1];

  const double residual = tridiagonal_residual(lower, diag, upper, x, rhs);
  if (!(residual <= kTridiagonalResidualTol)) throw IllConditionedError(residual);
  return x;
}

GridFn solve_poisson_dirichlet(const GridFn& f, const Grid1D& grid) {
  require_on_grid(f, grid);
  const std::size_t n = grid.interior_size();
  const double inv_h2 = 1.0 / (grid.h() * grid.h());
  const std::vector<double> off(n, -inv_h2);
  const std::vector<double> diag(n, 2.0 * inv_h2);
  // Interior rows are only weakly dominant; the matrix is irreducibly
  // dominant, so elimination without pivoting is stable.
  const auto x = solve_tridiagonal(off, diag, off, f.interior(), PivotPolicy::residual_checked);
  std::vector<double> phi(grid.size(), 0.0);
  std::copy(x.begin(), x.end(), phi.begin() + 1);
  return GridFn(std::move(phi));
}

}  // namespace kgz
