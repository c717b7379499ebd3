#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "helpers.hpp"
#include "kgz/checks/oracles.hpp"
#include "kgz/errors.hpp"
#include "kgz/harness/presets.hpp"
#include "kgz/kgz_scheme.hpp"

namespace kgz {
namespace {

using test::max_abs;
using test::max_abs_diff;
using test::small_params;

struct Problem {
  KgzParams params;
  SampledData data;
  InitialLayerData layer;
};

Problem make_problem(const KgzParams& p, const InitialData& d) {
  SampledData s = sample(d, p.grid);
  InitialLayerData layer = prepare_layer(p, s);
  return {p, std::move(s), std::move(layer)};
}

Problem gauss_sech(const KgzParams& p) {
  return make_problem(p, harness::preset_initial_data("gauss_sech"));
}

// Largest relative deviation of the energy monitor from its value at level 1.
double energy_drift(const Problem& pr) {
  double e1 = 0.0, worst = 0.0;
  for_each_level(pr.params, pr.data, pr.layer, [&](const KgzState& s) {
    const double e = compute_energy_kgz(s, pr.layer, pr.params);
    if (s.k == 1) e1 = e;
    worst = std::max(worst, std::abs(e - e1) / std::abs(e1));
  });
  return worst;
}

TEST(KgzParams, StepsAndValidation) {
  KgzParams p = small_params(1.0, 0.5, 0.1, 1.0);
  EXPECT_EQ(p.steps(), 10u);
  p.T = 0.3;
  EXPECT_EQ(p.steps(), 3u);
  p.T = 0.35;
  EXPECT_THROW(p.steps(), ParameterError);
  p.T = 1.0;
  p.tau = 0.0;
  EXPECT_THROW(validate(p), ParameterError);
  p.tau = 0.1;
  p.eps = 0.0;
  EXPECT_THROW(validate(p), ParameterError);
  p.eps = 1.0;
  p.T = -1.0;
  EXPECT_THROW(validate(p), ParameterError);
}

TEST(InitFirstSteps, ZeroDataStartsAtZero) {
  const Problem pr = make_problem(small_params(0.5, 0.5, 0.01, 0.1), test::zero_data());
  const KgzState s = init_first_steps(pr.params, pr.data, pr.layer);
  EXPECT_EQ(s.k, 1u);
  EXPECT_EQ(s.t, 0.01);
  EXPECT_EQ(max_abs(s.E_curr.values()), 0.0);
  EXPECT_EQ(max_abs(s.F_curr.values()), 0.0);
}

TEST(InitFirstSteps, TaylorFormulaWithoutVelocityOrPotential) {
  const double tau = 0.02;
  InitialData d = test::zero_data();
  d.E0 = [](double x) { return std::exp(-x * x); };
  const Problem pr = make_problem(small_params(0.5, 0.25, tau, 0.2), d);
  const KgzState s = init_first_steps(pr.params, pr.data, pr.layer);
  const GridFn lap = diff_second(pr.data.E0, pr.params.grid);
  for (std::size_t j = 1; j < pr.params.grid.cells(); ++j) {
    const double e0 = pr.data.E0[j];
    const double acc = lap[j] - e0 + e0 * e0 * e0;
    EXPECT_NEAR(s.E_curr[j], e0 + 0.5 * tau * tau * acc, 1e-15);
    EXPECT_NEAR(s.F_curr[j], tau * tau * e0 * acc, 1e-15);
    EXPECT_EQ(s.F_prev[j], 0.0);
    EXPECT_EQ(s.E_prev[j], e0);
  }
}

TEST(InitFirstSteps, AccelerationMatchesFineTrajectory) {
  // Case I keeps the w0 contribution to N_0 at O(eps), so the discrete
  // second time difference of a fine run converges to the start acceleration.
  const double tau = 1e-4;
  const Problem pr = gauss_sech(small_params(0.5, 0.1, tau, 3 * tau));
  const KgzState s1 = init_first_steps(pr.params, pr.data, pr.layer);
  const KgzState s2 = step(s1, pr.params, pr.layer);
  const GridFn acc =
      initial_acceleration(pr.data, pr.params.grid, pr.params.eps, pr.params.alpha);
  double worst = 0.0;
  for (std::size_t j = 1; j < pr.params.grid.cells(); ++j) {
    const double dtt = (s2.E_curr[j] - 2.0 * s2.E_prev[j] + s1.E_prev[j]) / (tau * tau);
    worst = std::max(worst, std::abs(dtt - acc[j]));
  }
  EXPECT_LE(worst, 1e-2 * max_abs(acc.values()));
}

TEST(Step, ZeroIsAFixedPoint) {
  const Problem pr = make_problem(small_params(0.1, 0.5, 0.01, 0.1), test::zero_data());
  KgzState s = init_first_steps(pr.params, pr.data, pr.layer);
  for (int i = 0; i < 9; ++i) s = step(s, pr.params, pr.layer);
  EXPECT_EQ(s.k, 10u);
  EXPECT_EQ(max_abs(s.E_curr.values()), 0.0);
  EXPECT_EQ(max_abs(s.F_curr.values()), 0.0);
}

TEST(Step, SingleInteriorNodeMatchesScalarUpdate) {
  KgzParams p;
  p.eps = 0.5;
  p.alpha = 0.0;
  p.beta = 0.0;
  p.grid = Grid1D(0.0, 1.0, 2);
  p.tau = 0.1;
  p.T = 1.0;
  const InitialLayerData layer(p.grid, p.eps, 0.0, 0.0, SineSpectrum{{0.0}}, SineSpectrum{{0.0}});
  auto node = [](double v) { return GridFn(std::vector<double>{0.0, v, 0.0}); };
  const KgzState s{1, 0.1, node(0.3), node(0.35), node(0.0), node(0.02)};
  const KgzState next = step(s, p, layer);

  const double tau = p.tau, h = 0.5, eps = p.eps;
  const double em = 0.3, e0 = 0.35, fm = 0.0, f0 = 0.02;
  const double c = 1.0 - e0 * e0 + f0;
  const double ep = ((2.0 * e0 - em) / (tau * tau) + 0.5 * (-2.0 * em / (h * h) - c * em)) /
                    (1.0 / (tau * tau) + c / 2.0 + 1.0 / (h * h));
  const double w = 1.0 / (eps * eps * h * h);
  const double fp = ((2.0 * f0 - fm) / (tau * tau) - w * fm +
                     (ep * ep - 2.0 * e0 * e0 + em * em) / (tau * tau)) /
                    (1.0 / (tau * tau) + w);
  EXPECT_NEAR(next.E_curr[1], ep, 1e-15);
  EXPECT_NEAR(next.F_curr[1], fp, 1e-15);
  EXPECT_EQ(next.E_prev, s.E_curr);
  EXPECT_EQ(next.F_prev, s.F_curr);
  EXPECT_EQ(next.k, 2u);
  EXPECT_NEAR(next.t, 0.2, 1e-15);
}

TEST(Step, MatchesDenseOracle) {
  for (auto ab : {harness::Incompatibility{1.0, 0.0}, harness::Incompatibility{0.0, -1.0}}) {
    const Problem pr = gauss_sech(small_params(0.2, 0.25, 0.01, 1.0, ab));
    KgzState s = init_first_steps(pr.params, pr.data, pr.layer);
    for (int i = 0; i < 10; ++i) s = step(s, pr.params, pr.layer);
    const KgzState fast = step(s, pr.params, pr.layer);
    const KgzState slow = oracle::naive_step(s, pr.params, pr.layer);
    EXPECT_LE(oracle::relative_max_diff(fast.E_curr.values(), slow.E_curr.values()), 1e-12);
    EXPECT_LE(oracle::relative_max_diff(fast.F_curr.values(), slow.F_curr.values()), 1e-12);
  }
}

TEST(Step, BackwardUndoesForward) {
  const Problem pr = gauss_sech(small_params(0.25, 0.25, 0.01, 1.0, {0.0, -1.0}));
  const KgzState s1 = init_first_steps(pr.params, pr.data, pr.layer);
  KgzState s = s1;
  for (int i = 0; i < 50; ++i) s = step(s, pr.params, pr.layer);
  for (int i = 0; i < 50; ++i) s = step_backward(s, pr.params, pr.layer);
  EXPECT_EQ(s.k, 1u);
  EXPECT_LE(max_abs_diff(s.E_curr.values(), s1.E_curr.values()), 1e-9);
  EXPECT_LE(max_abs_diff(s.F_curr.values(), s1.F_curr.values()), 1e-9);
  EXPECT_THROW(step_backward(s1, pr.params, pr.layer), ParameterError);
}

TEST(Step, RejectsLayerOnAnotherGrid) {
  const Problem pr = gauss_sech(small_params(0.5, 0.5, 0.01, 0.1));
  const Problem other = gauss_sech(small_params(0.5, 0.25, 0.01, 0.1));
  const KgzState s = init_first_steps(pr.params, pr.data, pr.layer);
  EXPECT_THROW(step(s, pr.params, other.layer), StructuralError);
}

TEST(Step, LostDominanceRaisesStabilityError) {
  const Grid1D g(0.0, 1.0, 4);
  const GridFn e({0.0, 1.0, 1.0, 1.0, 0.0});
  // 1/tau^2 + c/2 = 1 - 2 < 0 at every node.
  const std::vector<double> c(3, -4.0);
  try {
    detail::solve_e_level(e, e, c, g, 1.0);
    FAIL() << "expected StabilityError";
  } catch (const StabilityError& err) {
    EXPECT_EQ(err.node(), 1u);
    EXPECT_EQ(err.coefficient(), -4.0);
    EXPECT_EQ(err.tau(), 1.0);
  }

  InitialData d = test::zero_data();
  d.E0 = [](double x) { return 4.0 * std::exp(-x * x); };
  const Problem pr = make_problem(small_params(1.0, 0.5, 0.5, 1.0), d);
  const KgzState s = init_first_steps(pr.params, pr.data, pr.layer);
  EXPECT_THROW(step(s, pr.params, pr.layer), StabilityError);
}

TEST(RecoverN, Examples) {
  const Grid1D g(0.0, 1.0, 4);
  const InitialLayerData zero(g, 1.0, 0.0, 0.0, SineSpectrum{{0.0, 0.0, 0.0}},
                              SineSpectrum{{0.0, 0.0, 0.0}});
  const GridFn E({0.0, 1.0, 2.0, -1.0, 0.0});
  const GridFn F({0.0, 0.5, 0.5, 0.5, 0.0});
  EXPECT_EQ(recover_N(E, F, zero, 0.3), GridFn({0.0, -0.5, -3.5, -0.5, 0.0}));

  const InitialLayerData one(g, 1.0, 0.0, 0.0, SineSpectrum{{1.0, 0.0, 0.0}},
                             SineSpectrum{{0.0, 0.0, 0.0}});
  const GridFn N = recover_N(GridFn(g), GridFn(g), one, 0.0);
  for (std::size_t j = 1; j < 4; ++j) EXPECT_NEAR(N[j], std::sin(j * std::numbers::pi / 4), 1e-15);
}

TEST(Run, TwoStepsProduceTwoLevelSnapshots) {
  const KgzParams p = small_params(0.5, 0.5, 0.01, 0.02);
  const std::vector<double> times{0.0, 0.01, 0.02};
  const RunResult r = run(p, harness::preset_initial_data("gauss_sech"), times);
  ASSERT_EQ(r.snapshots.size(), 3u);
  for (std::size_t i = 0; i < 3; ++i) {
    EXPECT_EQ(r.snapshots[i].k, i);
    EXPECT_NEAR(r.snapshots[i].t, times[i], 1e-15);
  }
  EXPECT_EQ(max_abs(r.snapshots[0].F.values()), 0.0);
  EXPECT_EQ(r.final_state.k, 2u);
}

TEST(Run, ResumeIsBitIdentical) {
  const InitialData d = harness::preset_initial_data("gauss_sech");
  KgzParams half = small_params(0.25, 0.25, 0.01, 0.5, {0.0, -1.0});
  KgzParams full = half;
  full.T = 1.0;
  const SampledData s = sample(d, full.grid);
  const InitialLayerData layer = prepare_layer(full, s);
  const std::vector<double> at_end{1.0};
  const RunResult straight = run(full, s, layer, at_end);
  const RunResult first = run(half, s, layer, {});
  const RunResult second = resume(first.final_state, full, layer, at_end);
  EXPECT_EQ(second.final_state, straight.final_state);
  ASSERT_EQ(second.snapshots.size(), 1u);
  EXPECT_EQ(second.snapshots[0].N, straight.snapshots[0].N);
  const std::vector<double> too_early{0.2};
  EXPECT_THROW(resume(first.final_state, full, layer, too_early), ParameterError);
}

TEST(Run, MisalignedSnapshotNamesNearestTimes) {
  const std::vector<double> times{0.015};
  try {
    snapshot_indices(times, 0.01, 100);
    FAIL() << "expected ParameterError";
  } catch (const ParameterError& e) {
    EXPECT_NE(std::string(e.what()).find("nearest aligned times are 0.01 and 0.02"),
              std::string::npos)
        << e.what();
  }
  const std::vector<double> beyond{2.0};
  EXPECT_THROW(snapshot_indices(beyond, 0.01, 100), ParameterError);
  const std::vector<double> ok{0.0, 0.3, 1.0};
  EXPECT_EQ(snapshot_indices(ok, 0.01, 100), (std::vector<std::size_t>{0, 30, 100}));
}

TEST(Energy, ZeroStateHasZeroEnergy) {
  const Problem pr = make_problem(small_params(0.5, 0.5, 0.01, 0.1), test::zero_data());
  EXPECT_EQ(compute_energy_kgz(init_first_steps(pr.params, pr.data, pr.layer), pr.layer,
                               pr.params),
            0.0);
}

TEST(Energy, DriftIsSmallAndShrinksUnderRefinement) {
  const double coarse = energy_drift(gauss_sech(small_params(1.0, 0.1, 0.002, 1.0)));
  const double fine = energy_drift(gauss_sech(small_params(1.0, 0.05, 0.001, 1.0)));
  // Measured 1.1e-3 and 2.7e-4: the monitor drifts at second order.
  EXPECT_LE(fine, 1e-3);
  EXPECT_GE(coarse / fine, 2.0);
}

TEST(Nondimensionalize, Examples) {
  const Scaling s = nondimensionalize(1.0 / std::sqrt(3.0), 2.0, 1.0, 1.0, 1.0, 1.0, 1.0);
  EXPECT_NEAR(s.eps, 1.0, 1e-15);
  EXPECT_EQ(s.t_s, 0.5);
  EXPECT_NEAR(s.x_s, 0.5, 1e-15);
  EXPECT_EQ(s.E_s, 2.0);
  EXPECT_FALSE(s.warning);

  const Scaling small = nondimensionalize(0.01 / std::sqrt(3.0), 1.0, 1.0, 4.0, 1.0, 1.0, 1.0);
  EXPECT_NEAR(small.eps, 0.01, 1e-15);
  EXPECT_EQ(small.E_s, 1.0);

  const Scaling fast = nondimensionalize(2.0, 1.0, 1.0, 1.0, 1.0, 1.0, 1.0);
  ASSERT_TRUE(fast.warning);
  EXPECT_NE(fast.warning->find("exceeds 1"), std::string::npos);
  EXPECT_THROW(nondimensionalize(0.0, 1.0, 1.0, 1.0, 1.0, 1.0, 1.0), ParameterError);
}

}  // namespace
}  // namespace kgz
