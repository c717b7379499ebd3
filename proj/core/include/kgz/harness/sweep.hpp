#pragma once

#include <cstddef>
#include <filesystem>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "kgz/harness/presets.hpp"
#include "kgz/harness/rate_table.hpp"
#include "kgz/limit_models.hpp"

namespace kgz::harness {

/// Smallest eps accepted without the paper-scale opt-in; below it the
/// eps-dependent domain grows past what a desk run should attempt.
inline constexpr double kDeskScaleMinEps = 1.0 / 64.0;

enum class SweepMode { spatial, temporal, eps_limit };

SweepMode parse_mode(std::string_view name);
std::string_view mode_name(SweepMode mode);

/// Convergence study description.
///
/// spatial:   h = h0 / 2^i for i < levels at the fixed time step tau0; the
///            reference refines the finest h by refine_space.
/// temporal:  tau = tau0 / 2^i for i < levels at the fixed mesh size h0; the
///            reference refines the finest tau by refine_time.
/// eps_limit: one KGZ and one KG-OP run per eps at (h0, tau0); rows carry
///            max_t eta_e in e_err and max_t ||F||/eps in n_err.
struct SweepSpec {
  SweepMode mode = SweepMode::spatial;
  std::string preset = "gauss_sech";
  std::string case_name = "II";
  Incompatibility exponents{0.0, -1.0};
  std::vector<double> eps_list{1.0};
  double h0 = 0.2;
  double tau0 = 1e-4;
  std::size_t levels = 4;
  double T = 1.0;
  std::size_t refine_space = 8;
  std::size_t refine_time = 16;
  std::size_t workers = 0;  ///< 0: one per hardware thread
  bool paper_scale = false;
  std::filesystem::path out_path;  ///< empty: no file is written
};

/// Throws ParameterError for an unusable spec.
void validate(const SweepSpec& spec);

struct EpsLimitSeries {
  double eps = 0.0;
  LimitMetrics metrics;
};

struct SweepResult {
  RateTable table;
  std::vector<EpsLimitSeries> limit_series;  ///< eps_limit mode only
  std::optional<double> eta_e_slope;         ///< eps_limit mode only
};

/// Runs every (eps, h, tau) experiment, in parallel up to spec.workers, and
/// assembles the table. A failed run becomes a row with `error` set; the
/// sweep continues. Writes spec.out_path atomically when it is set.
SweepResult run_sweep(const SweepSpec& spec);

/// Lockstep KGZ / KG-OP run on the domain for `eps`, returning the per-level
/// limit diagnostics.
LimitMetrics run_limit_study(const InitialData& data, Incompatibility exponents, double eps,
                             double h, double tau, double T);

/// Least-squares slope of y against x.
double fitted_slope(std::span<const double> x, std::span<const double> y);

/// tau reduced to T / ceil(T / tau) so that T is a whole number of steps.
double align_tau(double T, double tau);

/// Runs `jobs` on up to `workers` threads. Each job writes only its own
/// result slot, so the outcome does not depend on scheduling.
void run_parallel(std::vector<std::function<void()>>& jobs, std::size_t workers);

}  // namespace kgz::harness
