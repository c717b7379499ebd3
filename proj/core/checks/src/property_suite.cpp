#include "kgz/checks/property_suite.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "kgz/checks/oracles.hpp"
#include "kgz/harness/presets.hpp"
#include "kgz/kgz_scheme.hpp"
#include "kgz/limit_models.hpp"
#include "kgz/sine_transform.hpp"
#include "kgz/tridiagonal.hpp"

namespace kgz::checks {

namespace {

CheckResult verdict(std::string name, double measured, double tol, std::string detail = {}) {
  return {std::move(name), measured <= tol, measured, tol, std::move(detail)};
}

double max_abs(std::span<const double> v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

CheckResult summation_by_parts(std::mt19937_64& rng) {
  double worst = 0.0;
  for (std::size_t m = 2; m <= 128; ++m) {
    const Grid1D grid(-1.0, 2.0, m);
    for (int trial = 0; trial < 3; ++trial) {
      const GridFn u = oracle::random_grid_fn(grid, rng);
      const GridFn v = oracle::random_grid_fn(grid, rng);
      GridFn neg_lap = diff_second(u, grid);
      neg_lap *= -1.0;
      const double lhs = inner(neg_lap, v, grid);
      const auto du = diff_forward(u, grid);
      const auto dv = diff_forward(v, grid);
      const double rhs = inner_shifted(du, dv, grid);
      // Cauchy-Schwarz bound of either side sets the scale.
      const double scale = std::sqrt(inner_shifted(du, du, grid) * inner_shifted(dv, dv, grid));
      if (scale > 0.0) worst = std::max(worst, std::abs(lhs - rhs) / scale);
    }
  }
  return verdict("summation by parts (-d2 u, v) = <d+ u, d+ v>", worst, 1e-13,
                 "M = 2..128, 3 random pairs each");
}

std::vector<CheckResult> sine_transform_checks(std::mt19937_64& rng) {
  double round_trip = 0.0;
  double parseval = 0.0;
  double fast_vs_naive = 0.0;
  for (std::size_t m : {2, 3, 4, 8, 16, 64, 128}) {
    const Grid1D grid(-3.0, 5.0, m);
    const GridFn u = oracle::random_grid_fn(grid, rng);
    const SineSpectrum s = dst_forward(u, grid);
    const GridFn back = dst_inverse(s, grid);
    round_trip = std::max(round_trip, oracle::relative_max_diff(back.values(), u.values()));

    const SineTransform fast(m);
    const SineSpectrum sf = fast.forward(u);
    fast_vs_naive = std::max(fast_vs_naive, oracle::relative_max_diff(sf.coeffs, s.coeffs));
    const GridFn back_fast = fast.inverse(s);
    fast_vs_naive =
        std::max(fast_vs_naive, oracle::relative_max_diff(back_fast.values(), back.values()));

    double phys = 0.0;
    for (double x : u.interior()) phys += x * x;
    phys *= grid.h();
    double spec = 0.0;
    for (double c : s.coeffs) spec += c * c;
    spec *= 0.5 * grid.length();
    parseval = std::max(parseval, std::abs(phys - spec) / phys);
  }
  return {verdict("DST round trip", round_trip, 1e-12, "M in {2,3,4,8,16,64,128}"),
          verdict("DST Parseval identity", parseval, 1e-12),
          verdict("FFT sine transform matches naive sums", fast_vs_naive, 1e-12)};
}

CheckResult closed_form_H(std::mt19937_64& rng) {
  const std::size_t m = 16;
  const Grid1D grid(0.0, std::numbers::pi, m);
  double worst = 0.0;
  for (double eps : {1.0, 0.1, 0.01}) {
    for (double tau : {0.1, 0.01}) {
      const InitialLayerData layer(grid, eps, 0.0, 0.0, oracle::random_spectrum(m - 1, rng),
                                   oracle::random_spectrum(m - 1, rng));
      for (double t : {tau, 0.37, 1.0}) {
        const GridFn H = eval_H(layer, t, tau);
        for (std::size_t j = 1; j < m; ++j) {
          worst = std::max(worst, std::abs(H[j] - oracle::quadrature_H(layer, j, t, tau)));
        }
      }
    }
  }
  return verdict("eval_H vs Gauss-Kronrod average of G (absolute)", worst, 1e-9,
                 "random spectra, eps in {1,0.1,0.01}, tau in {0.1,0.01}");
}

struct SmallProblem {
  KgzParams params;
  SampledData data;
  InitialLayerData layer;
};

SmallProblem small_problem(double eps, double tau) {
  KgzParams p;
  p.eps = eps;
  p.alpha = 0.0;
  p.beta = -1.0;
  p.grid = Grid1D(-8.0, 8.0, 64);
  p.tau = tau;
  p.T = 200.0 * tau;
  SampledData d = sample(harness::preset_initial_data("gauss_sech"), p.grid);
  InitialLayerData layer = prepare_layer(p, d);
  return {p, std::move(d), std::move(layer)};
}

double state_gap(const KgzState& a, const KgzState& b) {
  double diff = 0.0;
  double scale = 0.0;
  const std::pair<const GridFn*, const GridFn*> pairs[] = {
      {&a.E_prev, &b.E_prev}, {&a.E_curr, &b.E_curr}, {&a.F_prev, &b.F_prev}, {&a.F_curr, &b.F_curr}};
  for (const auto& [x, y] : pairs) {
    for (std::size_t j = 0; j < x->size(); ++j) {
      diff = std::max(diff, std::abs((*x)[j] - (*y)[j]));
      scale = std::max(scale, std::abs((*y)[j]));
    }
  }
  return diff / scale;
}

std::vector<CheckResult> reversibility() {
  const SmallProblem sp = small_problem(0.25, 0.01);
  const KgzState start = init_first_steps(sp.params, sp.data, sp.layer);

  KgzState s = start;
  for (int i = 0; i < 100; ++i) s = step(s, sp.params, sp.layer);
  const KgzState after_one = step(start, sp.params, sp.layer);
  const double single = state_gap(step_backward(after_one, sp.params, sp.layer), start);
  for (int i = 0; i < 100; ++i) s = step_backward(s, sp.params, sp.layer);
  const double kgz_gap = state_gap(s, start);

  const KgState kg0 = init_kg(sp.params, sp.data, sp.layer, true);
  KgState g = kg0;
  for (int i = 0; i < 100; ++i) g = step_kg_op(g, sp.params, sp.layer, true);
  for (int i = 0; i < 100; ++i) g = step_kg_op_backward(g, sp.params, sp.layer, true);
  const double scale = std::max(max_abs(kg0.E_prev.values()), max_abs(kg0.E_curr.values()));
  double kg_diff = 0.0;
  for (std::size_t j = 0; j < g.E_prev.size(); ++j) {
    kg_diff = std::max({kg_diff, std::abs(g.E_prev[j] - kg0.E_prev[j]),
                        std::abs(g.E_curr[j] - kg0.E_curr[j])});
  }
  return {verdict("KGZ single step forward/backward", single, 1e-10),
          verdict("KGZ 100-step forward/backward round trip", kgz_gap, 1e-8),
          verdict("KG-OP 100-step forward/backward round trip", kg_diff / scale, 1e-8)};
}

std::vector<CheckResult> fixed_point_and_boundary() {
  KgzParams p;
  p.eps = 0.1;
  p.alpha = 1.0;
  p.beta = 0.0;
  p.grid = Grid1D(-10.0, 10.0, 80);
  p.tau = 0.01;
  p.T = 0.2;
  const InitialData zero{[](double) { return 0.0; }, [](double) { return 0.0; },
                         [](double) { return 0.0; }, [](double) { return 0.0; }};
  double nonzero = 0.0;
  {
    const SampledData d = sample(zero, p.grid);
    const InitialLayerData layer = prepare_layer(p, d);
    for_each_level(p, d, layer, [&](const KgzState& s) {
      for (const GridFn* u : {&s.E_curr, &s.F_curr, &s.E_prev, &s.F_prev}) {
        nonzero = std::max(nonzero, max_abs(u->values()));
      }
    });
  }
  double boundary = 0.0;
  {
    const SampledData d = sample(harness::preset_initial_data("gauss_sech"), p.grid);
    const InitialLayerData layer = prepare_layer(p, d);
    for_each_level(p, d, layer, [&](const KgzState& s) {
      const GridFn N = recover_N(s, layer);
      for (const GridFn* u : {&s.E_curr, &s.F_curr, &N}) {
        boundary = std::max({boundary, std::abs((*u)[0]), std::abs((*u)[u->size() - 1])});
      }
    });
  }
  return {verdict("zero data is an exact fixed point", nonzero, 0.0),
          verdict("Dirichlet zeros exact after every step", boundary, 0.0)};
}

std::vector<CheckResult> linear_solves(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  double tri = 0.0;
  for (std::size_t n : {1, 2, 3, 10, 50, 200}) {
    std::vector<double> lo(n), di(n), up(n), rhs(n);
    for (std::size_t i = 0; i < n; ++i) {
      lo[i] = dist(rng);
      up[i] = dist(rng);
      di[i] = (std::abs(lo[i]) + std::abs(up[i]) + 0.5 + std::abs(dist(rng))) *
              (dist(rng) < 0.0 ? -1.0 : 1.0);
      rhs[i] = dist(rng);
    }
    const auto x = solve_tridiagonal(lo, di, up, rhs);
    tri = std::max(tri, oracle::relative_max_diff(
                            x, oracle::dense_tridiagonal_solve(lo, di, up, rhs)));
  }
  double poisson = 0.0;
  for (std::size_t m : {2, 16, 64}) {
    const Grid1D grid(0.0, 1.0, m);
    const GridFn f = oracle::random_grid_fn(grid, rng);
    const GridFn phi = solve_poisson_dirichlet(f, grid);
    poisson = std::max(poisson, oracle::relative_max_diff(
                                    phi.values(), oracle::dense_poisson(f, grid).values()));
  }
  return {verdict("tridiagonal solve vs dense LU", tri, 1e-12),
          verdict("Poisson solve vs dense LU", poisson, 1e-12)};
}

CheckResult step_vs_naive() {
  const SmallProblem sp = small_problem(0.5, 0.02);
  KgzState s = init_first_steps(sp.params, sp.data, sp.layer);
  for (int i = 0; i < 5; ++i) s = step(s, sp.params, sp.layer);
  const KgzState fast = step(s, sp.params, sp.layer);
  const KgzState slow = oracle::naive_step(s, sp.params, sp.layer);
  const double gap = std::max(oracle::relative_max_diff(fast.E_curr.values(), slow.E_curr.values()),
                              oracle::relative_max_diff(fast.F_curr.values(), slow.F_curr.values()));
  return verdict("step vs naive dense re-implementation", gap, 1e-12);
}

}  // namespace

std::vector<CheckResult> run_property_suite(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<CheckResult> out;
  out.push_back(summation_by_parts(rng));
  for (auto& r : sine_transform_checks(rng)) out.push_back(std::move(r));
  out.push_back(closed_form_H(rng));
  for (auto& r : reversibility()) out.push_back(std::move(r));
  for (auto& r : fixed_point_and_boundary()) out.push_back(std::move(r));
  for (auto& r : linear_solves(rng)) out.push_back(std::move(r));
  out.push_back(step_vs_naive());
  return out;
}

}  // namespace kgz::checks
