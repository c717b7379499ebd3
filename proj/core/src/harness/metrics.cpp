#include "kgz/harness/metrics.hpp"

#include <bit>
#include <cmath>

#include "kgz/errors.hpp"

namespace kgz::harness {

ErrorPair error_metrics(const Snapshot& numeric, const Snapshot& reference, const Grid1D& grid) {
  if (std::abs(numeric.t - reference.t) > 1e-9 * std::max(1.0, reference.t)) {
    throw StructuralError("snapshots are taken at different times");
  }
  const GridNorms e_ref = norms(reference.E, grid);
  const GridNorms n_ref = norms(reference.N, grid);
  const double e_den = e_ref.l2 + e_ref.h1_semi;
  if (!(e_den > 0.0)) throw DegenerateProblemError("reference E has zero H1 norm");
  if (!(n_ref.l2 > 0.0)) throw DegenerateProblemError("reference N has zero L2 norm");
  const GridNorms e = norms(reference.E - numeric.E, grid);
  const GridNorms n = norms(reference.N - numeric.N, grid);
  return {(e.l2 + e.h1_semi) / e_den, n.l2 / n_ref.l2};
}

std::optional<double> convergence_rate(double coarse_err, double fine_err) {
  if (!(coarse_err > 0.0) || !(fine_err > 0.0) || !std::isfinite(coarse_err) ||
      !std::isfinite(fine_err)) {
    return std::nullopt;
  }
  return std::log2(coarse_err / fine_err);
}

GridFn restrict_injection(const GridFn& fine, const Grid1D& coarse, std::size_t factor) {
  if (fine.size() != coarse.cells() * factor + 1) {
    throw ParameterError("fine grid is not nested in the coarse grid");
  }
  std::vector<double> v(coarse.size());
  for (std::size_t j = 0; j < v.size(); ++j) v[j] = fine[j * factor];
  return GridFn(std::move(v));
}

std::vector<Snapshot> reference_solution(const KgzParams& params, const InitialData& data,
                                         std::size_t refine_space, std::size_t refine_time,
                                         std::span<const double> snapshot_times) {
  if (!std::has_single_bit(refine_space) || !std::has_single_bit(refine_time)) {
    throw ParameterError("refinement factors must be powers of two");
  }
  KgzParams fine = params;
  fine.grid = Grid1D(params.grid.a(), params.grid.b(), params.grid.cells() * refine_space);
  fine.tau = params.tau / static_cast<double>(refine_time);
  auto result = run(fine, data, snapshot_times);
  std::vector<Snapshot> out;
  out.reserve(result.snapshots.size());
  for (auto& s : result.snapshots) {
    out.push_back({s.t, s.k / refine_time, restrict_injection(s.E, params.grid, refine_space),
                   restrict_injection(s.F, params.grid, refine_space),
                   restrict_injection(s.N, params.grid, refine_space)});
  }
  return out;
}

}  // namespace kgz::harness
