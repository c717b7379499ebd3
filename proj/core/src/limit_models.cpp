#include "kgz/limit_models.hpp"

#include <cmath>
#include <initializer_list>
#include <utility>

#include "kgz/errors.hpp"

namespace kgz {

namespace {

void require_consistent(const KgzParams& params, const InitialLayerData& layer) {
  if (!(layer.grid() == params.grid)) throw StructuralError("layer and params use different grids");
}

GridFn potential_for(const InitialLayerData& layer, double t, double tau, bool use_potential) {
  return use_potential ? eval_H(layer, t, tau) : GridFn(layer.grid());
}

// sum_i w_i u_i over the interior.
GridFn combine(std::initializer_list<std::pair<double, const GridFn*>> terms) {
  const std::size_t n = terms.begin()->second->size();
  std::vector<double> v(n, 0.0);
  for (const auto& [w, u] : terms) {
    if (u->size() != n) throw StructuralError("trajectory levels differ in length");
    for (std::size_t j = 1; j + 1 < n; ++j) v[j] += w * (*u)[j];
  }
  return GridFn(std::move(v));
}

}  // namespace

KgState init_kg(const KgzParams& params, const SampledData& data,
                const InitialLayerData& layer, bool use_potential) {
  validate(params);
  require_consistent(params, layer);
  const Grid1D& grid = params.grid;
  const double tau = params.tau;
  const GridFn acc = initial_acceleration(data, grid, params.eps, params.alpha, use_potential);
  std::vector<double> e1(grid.size(), 0.0);
  for (std::size_t j = 1; j < grid.cells(); ++j) {
    e1[j] = data.E0[j] + tau * data.E1[j] + 0.5 * tau * tau * acc[j];
  }
  return KgState{1, tau, data.E0, GridFn(std::move(e1))};
}

KgState step_kg_op(const KgState& state, const KgzParams& params,
                   const InitialLayerData& layer, bool use_potential) {
  require_consistent(params, layer);
  const double t_mid = static_cast<double>(state.k) * params.tau;
  const GridFn H = potential_for(layer, t_mid, params.tau, use_potential);
  const auto c = detail::potential_coefficient(state.E_curr, nullptr, &H);
  GridFn next = detail::solve_e_level(state.E_prev, state.E_curr, c, params.grid, params.tau);
  const std::size_t k = state.k + 1;
  return KgState{k, static_cast<double>(k) * params.tau, state.E_curr, std::move(next)};
}

KgState step_kg_op_backward(const KgState& state, const KgzParams& params,
                            const InitialLayerData& layer, bool use_potential) {
  require_consistent(params, layer);
  if (state.k < 2) throw ParameterError("step_kg_op_backward needs a state at level k >= 2");
  const std::size_t k = state.k - 1;
  const double t_mid = static_cast<double>(k) * params.tau;
  const GridFn H = potential_for(layer, t_mid, params.tau, use_potential);
  const auto c = detail::potential_coefficient(state.E_prev, nullptr, &H);
  GridFn old = detail::solve_e_level(state.E_curr, state.E_prev, c, params.grid, params.tau);
  return KgState{k, t_mid, std::move(old), state.E_prev};
}

double compute_energy_kg(const KgState& state, const KgzParams& params) {
  const Grid1D& grid = params.grid;
  double kinetic = 0.0;
  double potential = 0.0;
  for (std::size_t j = 1; j < grid.cells(); ++j) {
    const double ep = state.E_prev[j];
    const double ec = state.E_curr[j];
    const double et = (ec - ep) / params.tau;
    kinetic += et * et;
    potential += 0.5 * (ep * ep + ec * ec) - 0.25 * (ep * ep * ep * ep + ec * ec * ec * ec);
  }
  const double gp = norms(state.E_prev, grid).h1_semi;
  const double gc = norms(state.E_curr, grid).h1_semi;
  return grid.h() * (kinetic + potential) + 0.5 * (gp * gp + gc * gc);
}

LimitMetricsTracker::LimitMetricsTracker(Grid1D grid, double tau, double eps)
    : grid_(grid), tau_(tau), eps_(eps) {
  if (!(tau > 0.0) || !(eps > 0.0)) throw ParameterError("tau and eps must be positive");
}

void LimitMetricsTracker::record_derivatives(std::size_t level, const GridFn& f_t,
                                             const GridFn& f_tt) {
  if (ft_l2_.size() <= level) {
    ft_l2_.resize(level + 1);
    ft_inf_.resize(level + 1);
    ftt_l2_.resize(level + 1);
    ftt_inf_.resize(level + 1);
  }
  const GridNorms a = norms(f_t, grid_);
  const GridNorms b = norms(f_tt, grid_);
  ft_l2_[level] = a.l2;
  ft_inf_[level] = a.inf;
  ftt_l2_[level] = b.l2;
  ftt_inf_[level] = b.inf;
}

void LimitMetricsTracker::push(const GridFn& kgz_E, const GridFn& kgz_F, const GridFn& kgop_E) {
  require_on_grid(kgz_E, grid_);
  require_on_grid(kgz_F, grid_);
  require_on_grid(kgop_E, grid_);
  const GridNorms diff = norms(kgz_E - kgop_E, grid_);
  const GridNorms f = norms(kgz_F, grid_);
  eta_e_.push_back(diff.l2 + diff.h1_semi);
  f_l2_.push_back(f.l2);
  f_inf_.push_back(f.inf);

  if (head_.size() < 4) head_.push_back(kgz_F);
  window_.push_back(kgz_F);
  if (window_.size() > 4) window_.pop_front();
  ++count_;

  const double it = 1.0 / tau_;
  const double it2 = it * it;
  if (count_ == 4) {
    const GridFn& f0 = head_[0];
    const GridFn& f1 = head_[1];
    const GridFn& f2 = head_[2];
    const GridFn& f3 = head_[3];
    record_derivatives(0, combine({{-1.5 * it, &f0}, {2.0 * it, &f1}, {-0.5 * it, &f2}}),
                       combine({{2.0 * it2, &f0}, {-5.0 * it2, &f1}, {4.0 * it2, &f2},
                                {-1.0 * it2, &f3}}));
  }
  if (count_ >= 3) {
    // Centred differences at the middle of the last three levels.
    const GridFn& fm = window_[window_.size() - 3];
    const GridFn& f0 = window_[window_.size() - 2];
    const GridFn& fp = window_[window_.size() - 1];
    record_derivatives(count_ - 2, combine({{0.5 * it, &fp}, {-0.5 * it, &fm}}),
                       combine({{it2, &fp}, {-2.0 * it2, &f0}, {it2, &fm}}));
  }
}

LimitMetrics LimitMetricsTracker::finish() {
  if (count_ < 4) throw StructuralError("limit metrics need at least 4 levels");
  const double it = 1.0 / tau_;
  const double it2 = it * it;
  const GridFn& f3 = window_[0];
  const GridFn& f2 = window_[1];
  const GridFn& f1 = window_[2];
  const GridFn& f0 = window_[3];
  record_derivatives(count_ - 1, combine({{1.5 * it, &f0}, {-2.0 * it, &f1}, {0.5 * it, &f2}}),
                     combine({{2.0 * it2, &f0}, {-5.0 * it2, &f1}, {4.0 * it2, &f2},
                              {-1.0 * it2, &f3}}));
  LimitMetrics out;
  out.t.resize(count_);
  out.eta_e = eta_e_;
  out.f_l2 = f_l2_;
  out.eta_2.resize(count_);
  out.eta_inf.resize(count_);
  for (std::size_t k = 0; k < count_; ++k) {
    out.t[k] = static_cast<double>(k) * tau_;
    out.eta_2[k] = f_l2_[k] / eps_ + ft_l2_[k] + ftt_l2_[k];
    out.eta_inf[k] = f_inf_[k] / eps_ + ft_inf_[k] + ftt_inf_[k];
  }
  return out;
}

LimitMetrics limit_metrics(std::span<const GridFn> kgz_E, std::span<const GridFn> kgz_F,
                           std::span<const GridFn> kgop_E, const Grid1D& grid, double tau,
                           double eps) {
  if (kgz_E.size() != kgz_F.size() || kgz_E.size() != kgop_E.size()) {
    throw StructuralError("trajectories must share the same time levels");
  }
  LimitMetricsTracker tracker(grid, tau, eps);
  for (std::size_t k = 0; k < kgz_E.size(); ++k) tracker.push(kgz_E[k], kgz_F[k], kgop_E[k]);
  return tracker.finish();
}

}  // namespace kgz
