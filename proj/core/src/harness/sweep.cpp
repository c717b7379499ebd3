#include "kgz/harness/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <cmath>
#include <limits>
#include <thread>

#include "kgz/errors.hpp"
#include "kgz/harness/metrics.hpp"

namespace kgz::harness {

namespace {

std::size_t cells_for(double length, double h) {
  return static_cast<std::size_t>(std::ceil(length / h - 1e-9));
}

struct RunOutcome {
  std::optional<Snapshot> snapshot;
  std::string error;
};

RunOutcome final_snapshot(const KgzParams& params, const InitialData& data) {
  try {
    const double T[] = {params.T};
    auto result = run(params, data, T);
    return {std::move(result.snapshots.front()), {}};
  } catch (const std::exception& e) {
    return {std::nullopt, e.what()};
  }
}

ErrorRow measure(const KgzParams& params, const RunOutcome& numeric, const RunOutcome& reference,
                 std::size_t refine_space) {
  ErrorRow row{params.eps, params.grid.h(), params.tau, params.T, 0.0, 0.0, {}, {}, {}};
  const double nan = std::numeric_limits<double>::quiet_NaN();
  try {
    if (!numeric.snapshot) throw NumericalError(numeric.error);
    if (!reference.snapshot) throw NumericalError("reference run failed: " + reference.error);
    const Snapshot& fine = *reference.snapshot;
    const Snapshot ref{fine.t, numeric.snapshot->k,
                       restrict_injection(fine.E, params.grid, refine_space),
                       restrict_injection(fine.F, params.grid, refine_space),
                       restrict_injection(fine.N, params.grid, refine_space)};
    const ErrorPair err = error_metrics(*numeric.snapshot, ref, params.grid);
    row.e_err = err.e_err;
    row.n_err = err.n_err;
  } catch (const std::exception& e) {
    row.e_err = nan;
    row.n_err = nan;
    row.error = e.what();
  }
  return row;
}

void add_common_metadata(const SweepSpec& spec, RateTable& table) {
  table.metadata.emplace_back("mode", std::string(mode_name(spec.mode)));
  table.metadata.emplace_back("preset", spec.preset);
  table.metadata.emplace_back("case", spec.case_name);
  table.metadata.emplace_back("alpha", format_value(spec.exponents.alpha));
  table.metadata.emplace_back("beta", format_value(spec.exponents.beta));
  table.metadata.emplace_back("T", format_value(spec.T));
  table.metadata.emplace_back("domain", "[-30-1/eps, 30+1/eps]");
  if (spec.mode == SweepMode::spatial) {
    table.metadata.emplace_back("reference_refine_space", std::to_string(spec.refine_space));
  } else if (spec.mode == SweepMode::temporal) {
    table.metadata.emplace_back("reference_refine_time", std::to_string(spec.refine_time));
  }
}

struct Experiment {
  KgzParams params;
  std::size_t reference_slot = 0;
  std::size_t refine_space = 1;
};

}  // namespace

SweepMode parse_mode(std::string_view name) {
  if (name == "spatial") return SweepMode::spatial;
  if (name == "temporal") return SweepMode::temporal;
  if (name == "eps-limit" || name == "eps_limit") return SweepMode::eps_limit;
  throw ParameterError("unknown sweep mode '" + std::string(name) +
                       "'; expected spatial, temporal or eps-limit");
}

std::string_view mode_name(SweepMode mode) {
  switch (mode) {
    case SweepMode::spatial:
      return "spatial";
    case SweepMode::temporal:
      return "temporal";
    case SweepMode::eps_limit:
      return "eps-limit";
  }
  return "?";
}

void validate(const SweepSpec& spec) {
  (void)preset_initial_data(spec.preset);
  (void)alpha_star(spec.exponents.alpha, spec.exponents.beta);
  if (spec.eps_list.empty()) throw ParameterError("eps list is empty");
  for (double eps : spec.eps_list) {
    if (!(eps > 0.0) || eps > 1.0) throw ParameterError("every eps must lie in (0, 1]");
    if (eps < kDeskScaleMinEps && !spec.paper_scale) {
      throw ParameterError("eps = " + format_value(eps) +
                           " is below the desk-scale limit 1/64; pass --paper-scale to run it");
    }
  }
  if (!(spec.h0 > 0.0) || !(spec.tau0 > 0.0) || !(spec.T > 0.0)) {
    throw ParameterError("h0, tau0 and T must be positive");
  }
  if (spec.mode != SweepMode::eps_limit && spec.levels < 2) {
    throw ParameterError("a convergence sweep needs at least 2 levels");
  }
  for (std::size_t f : {spec.refine_space, spec.refine_time}) {
    if (!std::has_single_bit(f) || f < 4) {
      throw ParameterError("reference refinement factors must be powers of two >= 4");
    }
  }
}

double align_tau(double T, double tau) {
  if (!(T > 0.0) || !(tau > 0.0)) throw ParameterError("T and tau must be positive");
  const double q = T / tau;
  const double k = std::round(q);
  if (k >= 1.0 && std::abs(q - k) <= 1e-9 * q) return tau;
  return T / std::ceil(q);
}

double fitted_slope(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) throw ParameterError("slope fit needs >= 2 points");
  const double n = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
  }
  if (!(sxx > 0.0)) throw ParameterError("slope fit needs distinct abscissae");
  return sxy / sxx;
}

void run_parallel(std::vector<std::function<void()>>& jobs, std::size_t workers) {
  if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
  workers = std::min(workers, jobs.size());
  if (workers <= 1) {
    for (auto& job : jobs) job();
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::jthread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < jobs.size(); i = next++) jobs[i]();
    });
  }
}

LimitMetrics run_limit_study(const InitialData& data, Incompatibility exponents, double eps,
                             double h, double tau, double T) {
  const auto [a, b] = domain_for_eps(eps);
  KgzParams params;
  params.eps = eps;
  params.alpha = exponents.alpha;
  params.beta = exponents.beta;
  params.grid = Grid1D(a, b, cells_for(b - a, h));
  params.tau = tau;
  params.T = T;
  const std::size_t steps = params.steps();
  const SampledData sampled = sample(data, params.grid);
  const InitialLayerData layer = prepare_layer(params, sampled);

  LimitMetricsTracker tracker(params.grid, tau, eps);
  KgzState kgz = init_first_steps(params, sampled, layer);
  KgState kgop = init_kg(params, sampled, layer, true);
  tracker.push(kgz.E_prev, kgz.F_prev, kgop.E_prev);
  tracker.push(kgz.E_curr, kgz.F_curr, kgop.E_curr);
  while (kgz.k < steps) {
    kgz = step(kgz, params, layer);
    kgop = step_kg_op(kgop, params, layer, true);
    tracker.push(kgz.E_curr, kgz.F_curr, kgop.E_curr);
  }
  return tracker.finish();
}

SweepResult run_sweep(const SweepSpec& spec) {
  validate(spec);
  const InitialData data = preset_initial_data(spec.preset);
  SweepResult result;
  add_common_metadata(spec, result.table);

  const double tau0 = align_tau(spec.T, spec.tau0);
  if (tau0 != spec.tau0) {
    result.table.metadata.emplace_back("tau0_adjusted",
                                       format_value(spec.tau0) + " -> " + format_value(tau0));
  }

  std::vector<std::function<void()>> jobs;

  if (spec.mode == SweepMode::eps_limit) {
    std::vector<std::optional<LimitMetrics>> metrics(spec.eps_list.size());
    std::vector<std::string> errors(spec.eps_list.size());
    for (std::size_t i = 0; i < spec.eps_list.size(); ++i) {
      jobs.emplace_back([&, i] {
        try {
          metrics[i] = run_limit_study(data, spec.exponents, spec.eps_list[i], spec.h0, tau0,
                                       spec.T);
        } catch (const std::exception& e) {
          errors[i] = e.what();
        }
      });
    }
    run_parallel(jobs, spec.workers);

    std::vector<double> log_eps, log_eta;
    for (std::size_t i = 0; i < spec.eps_list.size(); ++i) {
      const double eps = spec.eps_list[i];
      const auto [a, b] = domain_for_eps(eps);
      ErrorRow row{eps, (b - a) / static_cast<double>(cells_for(b - a, spec.h0)), tau0, spec.T,
                   std::numeric_limits<double>::quiet_NaN(),
                   std::numeric_limits<double>::quiet_NaN(), {}, {}, errors[i]};
      if (metrics[i]) {
        const auto& m = *metrics[i];
        row.e_err = *std::max_element(m.eta_e.begin(), m.eta_e.end());
        row.n_err = *std::max_element(m.f_l2.begin(), m.f_l2.end()) / eps;
        result.limit_series.push_back({eps, *metrics[i]});
        if (row.e_err > 0.0) {
          log_eps.push_back(std::log2(eps));
          log_eta.push_back(std::log2(row.e_err));
        }
      }
      result.table.rows.push_back(std::move(row));
    }
    result.table.metadata.emplace_back("e_err", "max_t eta_e(t)");
    result.table.metadata.emplace_back("n_err", "max_t ||F(t)||_l2 / eps");
    if (log_eps.size() >= 2) {
      result.eta_e_slope = fitted_slope(log_eps, log_eta);
      result.table.metadata.emplace_back("eta_e_slope", format_value(*result.eta_e_slope));
    }
  } else {
    std::vector<Experiment> experiments;
    std::vector<KgzParams> references;
    for (double eps : spec.eps_list) {
      const auto [a, b] = domain_for_eps(eps);
      const std::size_t base_cells = cells_for(b - a, spec.h0);
      KgzParams base;
      base.eps = eps;
      base.alpha = spec.exponents.alpha;
      base.beta = spec.exponents.beta;
      base.T = spec.T;
      base.tau = tau0;
      base.grid = Grid1D(a, b, base_cells);
      if (std::abs(base.grid.h() - spec.h0) > 1e-12 * spec.h0) {
        result.table.metadata.emplace_back("h0_adjusted[eps=" + format_value(eps) + "]",
                                           format_value(spec.h0) + " -> " +
                                               format_value(base.grid.h()));
      }
      const std::size_t slot = references.size();
      const std::size_t finest = std::size_t{1} << (spec.levels - 1);
      KgzParams ref = base;
      std::size_t refine_space = 1;
      if (spec.mode == SweepMode::spatial) {
        ref.grid = Grid1D(a, b, base_cells * finest * spec.refine_space);
      } else {
        ref.tau = tau0 / static_cast<double>(finest * spec.refine_time);
      }
      references.push_back(ref);
      for (std::size_t i = 0; i < spec.levels; ++i) {
        KgzParams p = base;
        const std::size_t scale = std::size_t{1} << i;
        if (spec.mode == SweepMode::spatial) {
          p.grid = Grid1D(a, b, base_cells * scale);
          refine_space = finest * spec.refine_space / scale;
        } else {
          p.tau = tau0 / static_cast<double>(scale);
          refine_space = 1;
        }
        experiments.push_back({p, slot, refine_space});
      }
    }

    std::vector<RunOutcome> ref_out(references.size());
    std::vector<RunOutcome> exp_out(experiments.size());
    for (std::size_t i = 0; i < references.size(); ++i) {
      jobs.emplace_back([&, i] { ref_out[i] = final_snapshot(references[i], data); });
    }
    for (std::size_t i = 0; i < experiments.size(); ++i) {
      jobs.emplace_back([&, i] { exp_out[i] = final_snapshot(experiments[i].params, data); });
    }
    run_parallel(jobs, spec.workers);

    for (std::size_t i = 0; i < experiments.size(); ++i) {
      const auto& ex = experiments[i];
      result.table.rows.push_back(
          measure(ex.params, exp_out[i], ref_out[ex.reference_slot], ex.refine_space));
    }
  }

  result.table.finalize();
  if (!spec.out_path.empty()) write_file_atomic(spec.out_path, to_csv(result.table));
  return result;
}

}  // namespace kgz::harness
