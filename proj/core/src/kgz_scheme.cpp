#include "kgz/kgz_scheme.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "kgz/errors.hpp"
#include "kgz/tridiagonal.hpp"

namespace kgz {

namespace {

// Relative slack when deciding that T/tau (or t/tau) is an integer.
constexpr double kAlignmentTol = 1e-9;

std::optional<std::size_t> aligned_index(double t, double tau) {
  const double q = t / tau;
  const double k = std::round(q);
  if (k < 0.0 || std::abs(q - k) > kAlignmentTol * std::max(1.0, q)) return std::nullopt;
  return static_cast<std::size_t>(k);
}

GridFn squared(const GridFn& u) {
  std::vector<double> v(u.values().begin(), u.values().end());
  for (double& x : v) x *= x;
  return GridFn(std::move(v));
}

// F-stencil centred at `mid`, solved for the level opposite to `other`.
GridFn solve_f_level(const GridFn& f_other, const GridFn& f_mid, const GridFn& e_other,
                     const GridFn& e_mid, const GridFn& e_new, const Grid1D& grid, double tau,
                     double eps) {
  const std::size_t n = grid.interior_size();
  const double inv_tau2 = 1.0 / (tau * tau);
  const double inv_h2 = 1.0 / (grid.h() * grid.h());
  const double wave = 1.0 / (eps * eps);
  const std::vector<double> off(n, -0.5 * wave * inv_h2);
  const std::vector<double> diag(n, inv_tau2 + wave * inv_h2);
  std::vector<double> rhs(n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t j = i + 1;
    const double lap_other = (f_other[j + 1] - 2.0 * f_other[j] + f_other[j - 1]) * inv_h2;
    const double e2_new = e_new[j] * e_new[j];
    const double e2_mid = e_mid[j] * e_mid[j];
    const double e2_other = e_other[j] * e_other[j];
    rhs[i] = (2.0 * f_mid[j] - f_other[j]) * inv_tau2 + 0.5 * wave * lap_other +
             (e2_new - 2.0 * e2_mid + e2_other) * inv_tau2;
  }
  const auto x = solve_tridiagonal(off, diag, off, rhs);
  std::vector<double> out(grid.size(), 0.0);
  std::copy(x.begin(), x.end(), out.begin() + 1);
  return GridFn(std::move(out));
}

// One application of the symmetric stencil centred at the level holding
// (e_mid, f_mid) at time t_mid.
std::pair<GridFn, GridFn> advance(const GridFn& e_other, const GridFn& e_mid,
                                  const GridFn& f_other, const GridFn& f_mid, double t_mid,
                                  const KgzParams& params, const InitialLayerData& layer) {
  const GridFn H = eval_H(layer, t_mid, params.tau);
  const auto c = detail::potential_coefficient(e_mid, &f_mid, &H);
  GridFn e_new = detail::solve_e_level(e_other, e_mid, c, params.grid, params.tau);
  GridFn f_new =
      solve_f_level(f_other, f_mid, e_other, e_mid, e_new, params.grid, params.tau, params.eps);
  return {std::move(e_new), std::move(f_new)};
}

void require_consistent(const KgzParams& params, const InitialLayerData& layer) {
  if (!(layer.grid() == params.grid)) throw StructuralError("layer and params use different grids");
}

}  // namespace

std::size_t KgzParams::steps() const {
  if (!(tau > 0.0)) throw ParameterError("tau must be positive");
  if (!(T > 0.0)) throw ParameterError("T must be positive");
  const auto k = aligned_index(T, tau);
  if (!k || *k < 1) {
    std::ostringstream os;
    os << "T = " << T << " is not an integer multiple of tau = " << tau;
    throw ParameterError(os.str());
  }
  return *k;
}

void validate(const KgzParams& params) {
  if (!(params.eps > 0.0) || !std::isfinite(params.eps)) {
    throw ParameterError("eps must be positive");
  }
  (void)params.steps();
}

SampledData sample(const InitialData& data, const Grid1D& grid) {
  if (!data.E0 || !data.E1 || !data.w0 || !data.w1) {
    throw ParameterError("initial data must provide E0, E1, w0 and w1");
  }
  return {sample(grid, data.E0), sample(grid, data.E1), sample(grid, data.w0),
          sample(grid, data.w1)};
}

InitialLayerData prepare_layer(const KgzParams& params, const SampledData& data) {
  return prepare_layer(params.grid, params.eps, params.alpha, params.beta, data.w0, data.w1);
}

namespace detail {

std::vector<double> potential_coefficient(const GridFn& E, const GridFn* F, const GridFn* H) {
  const std::size_t n = E.size() - 2;
  std::vector<double> c(n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t j = i + 1;
    double v = 1.0 - E[j] * E[j];
    if (F != nullptr) v += (*F)[j];
    if (H != nullptr) v += (*H)[j];
    c[i] = v;
  }
  return c;
}

GridFn solve_e_level(const GridFn& other, const GridFn& mid, std::span<const double> c,
                     const Grid1D& grid, double tau) {
  require_on_grid(other, grid);
  require_on_grid(mid, grid);
  const std::size_t n = grid.interior_size();
  if (c.size() != n) throw StructuralError("potential coefficient must cover the interior");
  const double inv_tau2 = 1.0 / (tau * tau);
  const double inv_h2 = 1.0 / (grid.h() * grid.h());
  const std::vector<double> off(n, -0.5 * inv_h2);
  std::vector<double> diag(n);
  std::vector<double> rhs(n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t j = i + 1;
    const double shift = inv_tau2 + 0.5 * c[i];
    if (!(shift > 0.0)) throw StabilityError(j, c[i], tau);
    diag[i] = shift + inv_h2;
    const double lap_other = (other[j + 1] - 2.0 * other[j] + other[j - 1]) * inv_h2;
    rhs[i] = (2.0 * mid[j] - other[j]) * inv_tau2 + 0.5 * (lap_other - c[i] * other[j]);
  }
  const auto x = solve_tridiagonal(off, diag, off, rhs);
  std::vector<double> out(grid.size(), 0.0);
  std::copy(x.begin(), x.end(), out.begin() + 1);
  return GridFn(std::move(out));
}

}  // namespace detail

GridFn initial_acceleration(const SampledData& data, const Grid1D& grid, double eps,
                            double alpha, bool with_potential) {
  const GridFn lap = diff_second(data.E0, grid);
  const double eps_a = std::pow(eps, alpha);
  std::vector<double> acc(grid.size(), 0.0);
  for (std::size_t j = 1; j < grid.cells(); ++j) {
    const double e0 = data.E0[j];
    double n0 = -e0 * e0;
    if (with_potential) n0 += eps_a * data.w0[j];
    acc[j] = lap[j] - e0 - n0 * e0;
  }
  return GridFn(std::move(acc));
}

KgzState init_first_steps(const KgzParams& params, const SampledData& data,
                          const InitialLayerData& layer) {
  validate(params);
  require_consistent(params, layer);
  const Grid1D& grid = params.grid;
  const double tau = params.tau;
  const GridFn acc = initial_acceleration(data, grid, params.eps, params.alpha);

  std::vector<double> e1(grid.size(), 0.0);
  std::vector<double> f1(grid.size(), 0.0);
  for (std::size_t j = 1; j < grid.cells(); ++j) {
    e1[j] = data.E0[j] + tau * data.E1[j] + 0.5 * tau * tau * acc[j];
    const double f_acc = 2.0 * data.E1[j] * data.E1[j] + 2.0 * data.E0[j] * acc[j];
    f1[j] = 0.5 * tau * tau * f_acc;
  }
  return KgzState{1, tau, data.E0, GridFn(std::move(e1)), GridFn(grid), GridFn(std::move(f1))};
}

KgzState init_first_steps(const KgzParams& params, const InitialData& data,
                          const InitialLayerData& layer) {
  return init_first_steps(params, sample(data, params.grid), layer);
}

KgzState step(const KgzState& state, const KgzParams& params, const InitialLayerData& layer) {
  require_consistent(params, layer);
  const double t_mid = static_cast<double>(state.k) * params.tau;
  auto [e_next, f_next] =
      advance(state.E_prev, state.E_curr, state.F_prev, state.F_curr, t_mid, params, layer);
  const std::size_t k = state.k + 1;
  return KgzState{k, static_cast<double>(k) * params.tau, state.E_curr, std::move(e_next),
                  state.F_curr, std::move(f_next)};
}

KgzState step_backward(const KgzState& state, const KgzParams& params,
                       const InitialLayerData& layer) {
  require_consistent(params, layer);
  if (state.k < 2) throw ParameterError("step_backward needs a state at level k >= 2");
  const std::size_t k = state.k - 1;
  const double t_mid = static_cast<double>(k) * params.tau;
  auto [e_old, f_old] =
      advance(state.E_curr, state.E_prev, state.F_curr, state.F_prev, t_mid, params, layer);
  return KgzState{k, t_mid, std::move(e_old), state.E_prev, std::move(f_old), state.F_prev};
}

GridFn recover_N(const GridFn& E, const GridFn& F, const InitialLayerData& layer, double t) {
  require_on_grid(E, layer.grid());
  require_on_grid(F, layer.grid());
  GridFn N = eval_G(layer, t);
  N += F;
  N -= squared(E);
  return N;
}

GridFn recover_N(const KgzState& state, const InitialLayerData& layer) {
  return recover_N(state.E_curr, state.F_curr, layer, state.t);
}

std::vector<std::size_t> snapshot_indices(std::span<const double> times, double tau,
                                          std::size_t max_steps) {
  std::vector<std::size_t> out;
  out.reserve(times.size());
  for (double t : times) {
    const auto k = aligned_index(t, tau);
    if (!k || *k > max_steps) {
      const double lo = std::clamp(std::floor(t / tau), 0.0, static_cast<double>(max_steps));
      const double hi = std::clamp(std::ceil(t / tau), 0.0, static_cast<double>(max_steps));
      std::ostringstream os;
      os << "snapshot time " << t << " is not a multiple of tau = " << tau
         << " within [0, T]; nearest aligned times are " << lo * tau << " and " << hi * tau;
      throw ParameterError(os.str());
    }
    out.push_back(*k);
  }
  return out;
}

namespace {

Snapshot snapshot_prev(const KgzState& s, const InitialLayerData& layer, double tau) {
  const std::size_t k = s.k - 1;
  const double t = static_cast<double>(k) * tau;
  return {t, k, s.E_prev, s.F_prev, recover_N(s.E_prev, s.F_prev, layer, t)};
}

Snapshot snapshot_curr(const KgzState& s, const InitialLayerData& layer) {
  return {s.t, s.k, s.E_curr, s.F_curr, recover_N(s, layer)};
}

RunResult drive(KgzState state, const KgzParams& params, const InitialLayerData& layer,
                std::span<const double> snapshot_times) {
  const std::size_t steps = params.steps();
  auto indices = snapshot_indices(snapshot_times, params.tau, steps);
  std::sort(indices.begin(), indices.end());
  if (!indices.empty() && indices.front() + 1 < state.k) {
    throw ParameterError("snapshot requested before the resume level");
  }
  RunResult result;
  auto next = indices.begin();
  auto emit_until = [&](const KgzState& s) {
    while (next != indices.end() && *next + 1 == s.k) {
      result.snapshots.push_back(snapshot_prev(s, layer, params.tau));
      ++next;
    }
    while (next != indices.end() && *next == s.k) {
      result.snapshots.push_back(snapshot_curr(s, layer));
      ++next;
    }
  };
  emit_until(state);
  while (state.k < steps) {
    state = step(state, params, layer);
    emit_until(state);
  }
  result.final_state = std::move(state);
  return result;
}

}  // namespace

RunResult run(const KgzParams& params, const SampledData& data, const InitialLayerData& layer,
              std::span<const double> snapshot_times) {
  return drive(init_first_steps(params, data, layer), params, layer, snapshot_times);
}

RunResult run(const KgzParams& params, const InitialData& data,
              std::span<const double> snapshot_times) {
  validate(params);
  const SampledData sampled = sample(data, params.grid);
  const InitialLayerData layer = prepare_layer(params, sampled);
  return run(params, sampled, layer, snapshot_times);
}

RunResult resume(const KgzState& start, const KgzParams& params, const InitialLayerData& layer,
                 std::span<const double> snapshot_times) {
  validate(params);
  require_consistent(params, layer);
  return drive(start, params, layer, snapshot_times);
}

void for_each_level(const KgzParams& params, const SampledData& data,
                    const InitialLayerData& layer,
                    const std::function<void(const KgzState&)>& visit) {
  const std::size_t steps = params.steps();
  KgzState state = init_first_steps(params, data, layer);
  visit(state);
  while (state.k < steps) {
    state = step(state, params, layer);
    visit(state);
  }
}

double compute_energy_kgz(const KgzState& state, const InitialLayerData& layer,
                          const KgzParams& params) {
  const Grid1D& grid = params.grid;
  const double tau = params.tau;
  const double h = grid.h();
  const double t_prev = static_cast<double>(state.k - 1) * tau;
  const GridFn n_prev = recover_N(state.E_prev, state.F_prev, layer, t_prev);
  const GridFn n_curr = recover_N(state.E_curr, state.F_curr, layer, state.t);

  GridFn dn = n_curr - n_prev;
  dn *= -1.0 / tau;
  const GridFn phi = solve_poisson_dirichlet(dn, grid);

  double kinetic = 0.0;
  double mass = 0.0;
  double density = 0.0;
  double coupling = 0.0;
  for (std::size_t j = 1; j < grid.cells(); ++j) {
    const double ep = state.E_prev[j];
    const double ec = state.E_curr[j];
    const double et = (ec - ep) / tau;
    kinetic += et * et;
    mass += 0.5 * (ep * ep + ec * ec);
    density += 0.5 * 0.5 * (n_prev[j] * n_prev[j] + n_curr[j] * n_curr[j]);
    coupling += 0.5 * (n_prev[j] * ep * ep + n_curr[j] * ec * ec);
  }
  const double grad_prev = norms(state.E_prev, grid).h1_semi;
  const double grad_curr = norms(state.E_curr, grid).h1_semi;
  const double grad = 0.5 * (grad_prev * grad_prev + grad_curr * grad_curr);
  const double phi_grad = norms(phi, grid).h1_semi;
  const double potential = 0.5 * params.eps * params.eps * phi_grad * phi_grad;
  return h * (kinetic + mass + density + coupling) + grad + potential;
}

Scaling nondimensionalize(double v0, double omega_p, double c_s, double n0, double eps0,
                          double m, double N0) {
  for (double v : {v0, omega_p, c_s, n0, eps0, m, N0}) {
    if (!(v > 0.0) || !std::isfinite(v)) {
      throw ParameterError("physical constants must be positive and finite");
    }
  }
  Scaling s;
  s.eps = std::sqrt(3.0) * v0 / c_s;
  s.t_s = 1.0 / omega_p;
  s.x_s = std::sqrt(3.0) * v0 / omega_p;
  s.E_s = 2.0 * c_s * std::sqrt(m * N0 / (n0 * eps0));
  s.N_s = 1.0;
  if (s.eps > 1.0) {
    s.warning = "eps = " + std::to_string(s.eps) + " exceeds 1 (supersonic regime)";
  }
  return s;
}

}  // namespace kgz
