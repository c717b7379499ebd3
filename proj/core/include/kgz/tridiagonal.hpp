#pragma once

#include <span>
#include <vector>

#include "kgz/grid.hpp"

namespace kgz {

enum class PivotPolicy {
  /// Reject systems that are not strictly diagonally dominant in every row.
  require_dominance,
  /// Skip the dominance test; the residual check alone guards the result.
  residual_checked,
};

/// Bound on the normwise backward error every solve must meet (see
/// tridiagonal_residual).
inline constexpr double kTridiagonalResidualTol = 1e-12;

/// Thomas elimination without pivoting for the n x n system with sub-diagonal
/// `lower` (lower[0] unused), diagonal `diag` and super-diagonal `upper`
/// (upper[n-1] unused). All four spans have length n.
///
/// Throws SingularSystemError on a zero pivot and IllConditionedError when the
/// dominance test (require_dominance) or the residual check fails.
std::vector<double> solve_tridiagonal(std::span<const double> lower,
                                      std::span<const double> diag,
                                      std::span<const double> upper,
                                      std::span<const double> rhs,
                                      PivotPolicy policy = PivotPolicy::require_dominance);

/// Normwise backward error max_i |Ax - rhs|_i / max_i (|A||x| + |rhs|)_i.
/// Dividing by ||rhs|| alone would flag exact-to-rounding solutions of
/// systems whose entries span many orders of magnitude.
double tridiagonal_residual(std::span<const double> lower, std::span<const double> diag,
                            std::span<const double> upper, std::span<const double> x,
                            std::span<const double> rhs);

/// phi in X_M with -delta_x^2 phi = f at the interior nodes.
GridFn solve_poisson_dirichlet(const GridFn& f, const Grid1D& grid);

}  // namespace kgz
