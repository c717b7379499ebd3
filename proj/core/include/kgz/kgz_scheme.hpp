#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "kgz/grid.hpp"
#include "kgz/initial_layer.hpp"

namespace kgz {

/// Parameters of one KGZ run on the truncated interval.
struct KgzParams {
  double eps = 1.0;
  double alpha = 0.0;  ///< exponent on w0 in N_0 = -E_0^2 + eps^alpha w0
  double beta = 0.0;   ///< exponent on w1 in N_1 = -2 E_0 E_1 + eps^beta w1
  Grid1D grid{-1.0, 1.0, 2};
  double tau = 1e-3;
  double T = 1.0;

  /// T / tau as an integer; ParameterError if it is not one.
  std::size_t steps() const;
};

/// Throws ParameterError for eps <= 0, tau <= 0, T <= 0 or T not a multiple
/// of tau.
void validate(const KgzParams& params);

using Sampler = std::function<double(double)>;

/// Initial profiles E_0, E_1 and the incompatibility profiles w0, w1.
struct InitialData {
  Sampler E0;
  Sampler E1;
  Sampler w0;
  Sampler w1;
};

/// InitialData sampled on a grid, boundary entries hard-zeroed.
struct SampledData {
  GridFn E0;
  GridFn E1;
  GridFn w0;
  GridFn w1;
};

SampledData sample(const InitialData& data, const Grid1D& grid);

/// Builds the initial layer for `params` from the sampled w0, w1.
InitialLayerData prepare_layer(const KgzParams& params, const SampledData& data);

/// Two consecutive levels (k-1, k) of the two-step scheme.
struct KgzState {
  std::size_t k = 1;
  double t = 0.0;  ///< k * tau, never accumulated
  GridFn E_prev;
  GridFn E_curr;
  GridFn F_prev;
  GridFn F_curr;

  friend bool operator==(const KgzState&, const KgzState&) = default;
};

/// Second time derivative of E at t = 0 at the nodes,
/// delta_x^2 E_0 - E_0 - N_0 E_0 with N_0 = -E_0^2 + eps^alpha w0 (the w0
/// term is dropped when `with_potential` is false).
GridFn initial_acceleration(const SampledData& data, const Grid1D& grid, double eps,
                            double alpha, bool with_potential = true);

/// Level 0 (E_0, F = 0) and level 1 from the second-order Taylor start.
KgzState init_first_steps(const KgzParams& params, const SampledData& data,
                          const InitialLayerData& layer);
KgzState init_first_steps(const KgzParams& params, const InitialData& data,
                          const InitialLayerData& layer);

/// Advances (k-1, k) -> (k, k+1): E-solve first, then the F-solve which
/// needs E^{k+1}.
KgzState step(const KgzState& state, const KgzParams& params, const InitialLayerData& layer);

/// Inverse of step: (k-1, k) -> (k-2, k-1) using the same stencil centred at
/// level k-1. Requires k >= 2.
KgzState step_backward(const KgzState& state, const KgzParams& params,
                       const InitialLayerData& layer);

/// N = F - E^2 + G(t).
GridFn recover_N(const GridFn& E, const GridFn& F, const InitialLayerData& layer, double t);
/// N at the current level k of `state`.
GridFn recover_N(const KgzState& state, const InitialLayerData& layer);

struct Snapshot {
  double t = 0.0;
  std::size_t k = 0;
  GridFn E;
  GridFn F;
  GridFn N;
};

struct RunResult {
  std::vector<Snapshot> snapshots;
  KgzState final_state;
};

/// Maps each snapshot time to its step index; ParameterError naming the
/// nearest aligned times when one is not a multiple of tau within [0, T].
std::vector<std::size_t> snapshot_indices(std::span<const double> times, double tau,
                                          std::size_t max_steps);

/// Runs from t = 0 to T and records the requested snapshots in time order.
RunResult run(const KgzParams& params, const InitialData& data,
              std::span<const double> snapshot_times);
RunResult run(const KgzParams& params, const SampledData& data,
              const InitialLayerData& layer, std::span<const double> snapshot_times);

/// Continues from `start` (level k) to T. Snapshots at indices < start.k - 1
/// are rejected.
RunResult resume(const KgzState& start, const KgzParams& params, const InitialLayerData& layer,
                 std::span<const double> snapshot_times);

/// Calls `visit` with the state at every level k = 1..T/tau.
void for_each_level(const KgzParams& params, const SampledData& data,
                    const InitialLayerData& layer,
                    const std::function<void(const KgzState&)>& visit);

/// Discrete energy monitor built from delta_t^+ E at the half step, spatial
/// terms averaged over levels k-1 and k, and phi with -delta_x^2 phi = -delta_t^+ N.
/// Not conserved exactly by the scheme.
double compute_energy_kgz(const KgzState& state, const InitialLayerData& layer,
                          const KgzParams& params);

struct Scaling {
  double eps = 0.0;
  double t_s = 0.0;
  double x_s = 0.0;
  double E_s = 0.0;
  double N_s = 1.0;
  std::optional<std::string> warning;  ///< set when eps > 1
};

/// Scaling constants that map the physical system onto the dimensionless one.
Scaling nondimensionalize(double v0, double omega_p, double c_s, double n0, double eps0,
                          double m, double N0);

namespace detail {

/// Solves the E-stencil centred at level `mid` for the level opposite to
/// `other`, with c_j = 1 - E_j^2 + F_j + H_j given at the interior nodes.
GridFn solve_e_level(const GridFn& other, const GridFn& mid, std::span<const double> c,
                     const Grid1D& grid, double tau);

/// Builds c_j for the interior nodes; `F` and `H` may be null.
std::vector<double> potential_coefficient(const GridFn& E, const GridFn* F, const GridFn* H);

}  // namespace detail

}  // namespace kgz
