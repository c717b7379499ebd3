#pragma once

#include <cstddef>
#include <deque>
#include <span>
#include <vector>

#include "kgz/grid.hpp"
#include "kgz/initial_layer.hpp"
#include "kgz/kgz_scheme.hpp"

namespace kgz {

/// Levels (k-1, k) of the Klein-Gordon solver (with or without the
/// oscillatory potential G).
struct KgState {
  std::size_t k = 1;
  double t = 0.0;
  GridFn E_prev;
  GridFn E_curr;

  friend bool operator==(const KgState&, const KgState&) = default;
};

/// Taylor start for the KG / KG-OP solvers. With the potential, N_0 in the
/// acceleration is -E_0^2 + eps^alpha w0, as for KGZ; without it, -E_0^2.
KgState init_kg(const KgzParams& params, const SampledData& data,
                const InitialLayerData& layer, bool use_potential);

/// delta_t^2 E^k = (delta_x^2 - 1 + |E^k|^2 - H^k)(E^{k+1} + E^{k-1})/2 with
/// H^k = eval_H(t_k) when use_potential, 0 otherwise.
KgState step_kg_op(const KgState& state, const KgzParams& params,
                   const InitialLayerData& layer, bool use_potential);

/// Inverse of step_kg_op. Requires k >= 2.
KgState step_kg_op_backward(const KgState& state, const KgzParams& params,
                            const InitialLayerData& layer, bool use_potential);

/// Discrete KG energy: |delta_t^+ E|^2 plus |grad E|^2 + |E|^2 - |E|^4/2
/// averaged over the two levels.
double compute_energy_kg(const KgState& state, const KgzParams& params);

/// Per-level limit diagnostics between a KGZ run and a KG-OP run.
struct LimitMetrics {
  std::vector<double> t;
  std::vector<double> eta_e;    ///< ||E - E~||_{H^1} (l2 + h1 semi-norm)
  std::vector<double> eta_2;    ///< ||F||/eps + ||F_t|| + ||F_tt|| in l2
  std::vector<double> eta_inf;  ///< same in the max norm
  std::vector<double> f_l2;     ///< ||F|| in l2
};

/// Computes the diagnostics on every level. The F time derivatives use
/// delta_t^c and delta_t^2 inside and second-order one-sided stencils at the
/// first and last level. Needs at least 4 levels.
LimitMetrics limit_metrics(std::span<const GridFn> kgz_E, std::span<const GridFn> kgz_F,
                           std::span<const GridFn> kgop_E, const Grid1D& grid, double tau,
                           double eps);

/// Streaming form of limit_metrics: push one level at a time, then finish().
/// Keeps only a short window of F levels.
class LimitMetricsTracker {
 public:
  LimitMetricsTracker(Grid1D grid, double tau, double eps);

  void push(const GridFn& kgz_E, const GridFn& kgz_F, const GridFn& kgop_E);
  LimitMetrics finish();

 private:
  void record_derivatives(std::size_t level, const GridFn& f_t, const GridFn& f_tt);

  Grid1D grid_;
  double tau_;
  double eps_;
  std::size_t count_ = 0;
  std::vector<GridFn> head_;   // first four F levels
  std::deque<GridFn> window_;  // last four F levels
  std::vector<double> eta_e_, f_l2_, f_inf_;
  std::vector<double> ft_l2_, ft_inf_, ftt_l2_, ftt_inf_;
};

}  // namespace kgz
