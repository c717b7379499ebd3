#pragma once

#include <optional>
#include <span>
#include <vector>

#include "kgz/kgz_scheme.hpp"

namespace kgz::harness {

/// Relative errors of one numerical snapshot against a reference snapshot:
///   e = (||e|| + ||delta_x^+ e||) / (||E|| + ||delta_x^+ E||),  n = ||n|| / ||N||.
struct ErrorPair {
  double e_err = 0.0;
  double n_err = 0.0;
};

/// Both snapshots must live on `grid` at the same time. A reference with zero
/// E or N norm raises DegenerateProblemError.
ErrorPair error_metrics(const Snapshot& numeric, const Snapshot& reference, const Grid1D& grid);

/// log2(coarse / fine); nullopt unless both errors are positive and finite.
std::optional<double> convergence_rate(double coarse_err, double fine_err);

/// Injects a fine-grid function onto every `factor`-th node.
GridFn restrict_injection(const GridFn& fine, const Grid1D& coarse, std::size_t factor);

/// Reruns `params` on the grid refined by `refine_space` and with tau divided
/// by `refine_time`, then restricts the snapshots to the coarse grid. Both
/// factors must be powers of two (1 reproduces the coarse run).
std::vector<Snapshot> reference_solution(const KgzParams& params, const InitialData& data,
                                         std::size_t refine_space, std::size_t refine_time,
                                         std::span<const double> snapshot_times);

}  // namespace kgz::harness
