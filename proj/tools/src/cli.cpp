#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "kgz/checks/property_suite.hpp"
#include "kgz/errors.hpp"
#include "kgz/harness/presets.hpp"
#include "kgz/harness/rate_table.hpp"
#include "kgz/harness/sweep.hpp"
#include "kgz/kgz_scheme.hpp"

namespace kgz::cli {

namespace {

std::string shortest(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

// Accepts plain reals and p/q fractions such as 1/256.
double parse_real(std::string_view text, std::string_view what) {
  auto one = [&](std::string_view s) {
    double v = 0.0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc{} || res.ptr != s.data() + s.size()) {
      throw ParameterError("cannot parse " + std::string(what) + " value '" + std::string(text) +
                           "'");
    }
    return v;
  };
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) return one(text);
  return one(text.substr(0, slash)) / one(text.substr(slash + 1));
}

std::vector<double> parse_list(const std::string& text, std::string_view what) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(parse_real(item, what));
  }
  if (out.empty()) throw ParameterError(std::string(what) + " list is empty");
  return out;
}

struct ProblemOptions {
  std::string preset = "gauss_sech";
  std::string case_name = "II";
  std::optional<double> alpha;
  std::optional<double> beta;
  std::optional<harness::Incompatibility> custom_default;  // used when --alpha/--beta are absent

  void add_to(CLI::App& app) {
    app.add_option("--preset", preset, "initial data preset (gauss_sech, bump)");
    app.add_option("--case", case_name, "incompatibility case: I, II or custom");
    app.add_option("--alpha", alpha, "alpha for --case custom");
    app.add_option("--beta", beta, "beta for --case custom");
  }

  harness::Incompatibility exponents() const {
    if (case_name == "custom") {
      if (!alpha && !beta && custom_default) return *custom_default;
      if (!alpha || !beta) throw ParameterError("--case custom needs both --alpha and --beta");
      (void)alpha_star(*alpha, *beta);
      return {*alpha, *beta};
    }
    if (alpha || beta) throw ParameterError("--alpha/--beta are only accepted with --case custom");
    return harness::named_case(case_name);
  }
};

void require_desk_scale(double eps, bool paper_scale) {
  if (eps < harness::kDeskScaleMinEps && !paper_scale) {
    throw ParameterError("eps = " + shortest(eps) +
                         " is below the desk-scale limit 1/64; pass --paper-scale to run it");
  }
}

std::size_t cells_for(double length, double h) {
  return static_cast<std::size_t>(std::ceil(length / h - 1e-9));
}

void write_snapshot(const std::string& path, const Grid1D& grid, const Snapshot& s) {
  std::string text = "x,E,F,N\n";
  for (std::size_t j = 0; j < grid.size(); ++j) {
    text += shortest(grid.node(j)) + ',' + shortest(s.E[j]) + ',' + shortest(s.F[j]) + ',' +
            shortest(s.N[j]) + '\n';
  }
  harness::write_file_atomic(path, text);
}

struct SolveCommand {
  ProblemOptions problem;
  std::string eps = "1";
  double h = 0.1;
  double tau = 1e-3;
  double T = 1.0;
  std::string snapshots;
  std::string out;
  bool paper_scale = false;

  void add_to(CLI::App& app) {
    problem.add_to(app);
    app.add_option("--eps", eps, "eps in (0, 1], fractions such as 1/16 accepted");
    app.add_option("--h", h, "mesh size (rounded down to divide the domain)");
    app.add_option("--tau", tau, "time step; T/tau must be an integer");
    app.add_option("--T", T, "final time");
    app.add_option("--snapshots", snapshots, "comma separated output times (default: T)");
    app.add_option("--out", out, "snapshot file prefix")->required();
    app.add_flag("--paper-scale", paper_scale, "allow eps below 1/64");
  }

  int execute(std::ostream& os) const {
    const double e = parse_real(eps, "eps");
    if (!(e > 0.0)) throw ParameterError("eps must be positive");
    require_desk_scale(e, paper_scale);
    if (!(h > 0.0)) throw ParameterError("h must be positive");
    const auto ab = harness::domain_for_eps(std::min(e, 1.0));
    const auto exps = problem.exponents();

    KgzParams params;
    params.eps = e;
    params.alpha = exps.alpha;
    params.beta = exps.beta;
    params.grid = Grid1D(ab.first, ab.second, cells_for(ab.second - ab.first, h));
    params.tau = tau;
    params.T = T;
    validate(params);

    const std::vector<double> times = snapshots.empty() ? std::vector<double>{T}
                                                        : parse_list(snapshots, "snapshot");
    const SampledData data = sample(harness::preset_initial_data(problem.preset), params.grid);
    const InitialLayerData layer = prepare_layer(params, data);
    if (layer.outside_analysis_range()) {
      os << "warning: eps > 1 lies outside the analysed range (0, 1]\n";
    }
    os << "domain [" << shortest(ab.first) << ", " << shortest(ab.second) << "], M = "
       << params.grid.cells() << ", h = " << shortest(params.grid.h()) << ", steps = "
       << params.steps() << '\n';

    const RunResult result = run(params, data, layer, times);
    for (const Snapshot& s : result.snapshots) {
      const std::string path = snapshot_path(out, s.t);
      write_snapshot(path, params.grid, s);
      os << "t = " << shortest(s.t) << " -> " << path << '\n';
    }
    return kExitOk;
  }
};

struct SweepCommand {
  ProblemOptions problem;
  std::string mode = "spatial";
  std::string eps_list = "1";
  harness::SweepSpec spec;

  void add_to(CLI::App& app) {
    app.add_option("--mode", mode, "spatial, temporal or eps-limit");
    problem.add_to(app);
    app.add_option("--eps-list", eps_list, "comma separated eps values");
    app.add_option("--h0", spec.h0, "coarsest mesh size");
    app.add_option("--tau0", spec.tau0, "coarsest time step");
    app.add_option("--levels", spec.levels, "number of halvings");
    app.add_option("--T", spec.T, "final time");
    app.add_option("--refine-space", spec.refine_space, "spatial reference factor");
    app.add_option("--refine-time", spec.refine_time, "temporal reference factor");
    app.add_option("--out", spec.out_path, "CSV output path");
    app.add_flag("--paper-scale", spec.paper_scale, "allow eps below 1/64");
    app.add_option("--workers", spec.workers, "parallel runs (0: hardware threads)");
  }

  harness::SweepSpec resolved() const {
    harness::SweepSpec s = spec;
    s.mode = harness::parse_mode(mode);
    s.preset = problem.preset;
    s.case_name = problem.case_name;
    s.exponents = problem.exponents();
    s.eps_list = parse_list(eps_list, "eps");
    return s;
  }

  int execute(std::ostream& os) const {
    const harness::SweepResult result = harness::run_sweep(resolved());
    os << harness::to_csv(result.table);
    bool failed = false;
    for (const auto& row : result.table.rows) failed = failed || !row.error.empty();
    return failed ? kExitNumerical : kExitOk;
  }
};

struct LimitCommand {
  ProblemOptions problem;
  std::string eps_list = "1/4,1/8,1/16,1/32,1/64";
  double h = 0.05;
  double tau = 1e-3;
  double T = 1.0;
  std::size_t workers = 0;
  bool paper_scale = false;
  std::string out;

  void add_to(CLI::App& app) {
    problem.preset = "bump";
    problem.case_name = "custom";
    problem.custom_default = harness::Incompatibility{0.0, 0.0};
    problem.add_to(app);
    app.add_option("--eps-list", eps_list, "comma separated eps values");
    app.add_option("--h", h, "mesh size");
    app.add_option("--tau", tau, "time step");
    app.add_option("--T", T, "final time");
    app.add_option("--workers", workers, "parallel runs (0: hardware threads)");
    app.add_flag("--paper-scale", paper_scale, "allow eps below 1/64");
    app.add_option("--out", out, "per-level series CSV (eps,t,eta_e,eta_2,eta_inf,f_l2)");
  }

  int execute(std::ostream& os) const {
    harness::SweepSpec s;
    s.mode = harness::SweepMode::eps_limit;
    s.preset = problem.preset;
    s.case_name = problem.case_name;
    s.exponents = problem.exponents();
    s.eps_list = parse_list(eps_list, "eps");
    s.h0 = h;
    s.tau0 = tau;
    s.T = T;
    s.workers = workers;
    s.paper_scale = paper_scale;
    const harness::SweepResult result = harness::run_sweep(s);

    os << "eps,max_eta_e,max_F_l2_over_eps\n";
    for (const auto& row : result.table.rows) {
      os << harness::format_value(row.eps) << ',' << harness::format_value(row.e_err) << ','
         << harness::format_value(row.n_err);
      if (!row.error.empty()) os << "  # " << row.error;
      os << '\n';
    }
    if (result.eta_e_slope) {
      os << "slope of log2 max eta_e vs log2 eps: " << harness::format_value(*result.eta_e_slope)
         << '\n';
    }
    if (!out.empty()) {
      std::string text = "eps,t,eta_e,eta_2,eta_inf,f_l2\n";
      for (const auto& series : result.limit_series) {
        const auto& m = series.metrics;
        for (std::size_t i = 0; i < m.t.size(); ++i) {
          text += harness::format_value(series.eps) + ',' + harness::format_value(m.t[i]) + ',' +
                  harness::format_value(m.eta_e[i]) + ',' + harness::format_value(m.eta_2[i]) +
                  ',' + harness::format_value(m.eta_inf[i]) + ',' +
                  harness::format_value(m.f_l2[i]) + '\n';
        }
      }
      harness::write_file_atomic(out, text);
    }
    bool failed = false;
    for (const auto& row : result.table.rows) failed = failed || !row.error.empty();
    return failed ? kExitNumerical : kExitOk;
  }
};

int run_check(std::uint64_t seed, std::ostream& os) {
  bool ok = true;
  for (const auto& r : checks::run_property_suite(seed)) {
    os << (r.passed ? "PASS  " : "FAIL  ") << r.name << "  measured "
       << harness::format_value(r.measured) << " <= " << harness::format_value(r.tolerance);
    if (!r.detail.empty()) os << "  (" << r.detail << ')';
    os << '\n';
    ok = ok && r.passed;
  }
  return ok ? kExitOk : kExitNumerical;
}

// Pulls `--config PATH` out of the arguments and splices the JSON-derived
// tokens in right after the subcommand, so flags given later win.
std::vector<std::string> expand_config(std::vector<std::string> args) {
  for (std::size_t i = 0; i < args.size(); ++i) {
    std::string path;
    std::size_t consumed = 0;
    if (args[i] == "--config") {
      if (i + 1 >= args.size()) throw ParameterError("--config needs a path");
      path = args[i + 1];
      consumed = 2;
    } else if (args[i].starts_with("--config=")) {
      path = args[i].substr(9);
      consumed = 1;
    } else {
      continue;
    }
    std::ifstream in(path);
    if (!in) throw ParameterError("cannot read config file '" + path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    const auto extra = json_to_args(buf.str());
    args.erase(args.begin() + static_cast<std::ptrdiff_t>(i),
               args.begin() + static_cast<std::ptrdiff_t>(i + consumed));
    const std::size_t at = args.empty() ? 0 : 1;
    args.insert(args.begin() + static_cast<std::ptrdiff_t>(at), extra.begin(), extra.end());
    return args;
  }
  return args;
}

}  // namespace

std::vector<std::string> json_to_args(const std::string& json_text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::exception& e) {
    throw ParameterError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ParameterError("config must be a JSON object");
  auto scalar = [](const nlohmann::json& v) -> std::string {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_number_float()) return shortest(v.get<double>());
    if (v.is_number()) return v.dump();
    throw ParameterError("config values must be strings, numbers, booleans or arrays");
  };
  std::vector<std::string> out;
  for (const auto& [key, value] : doc.items()) {
    std::string flag = "--" + key;
    std::replace(flag.begin() + 2, flag.end(), '_', '-');
    if (value.is_boolean()) {
      if (value.get<bool>()) out.push_back(flag);
      continue;
    }
    out.push_back(flag);
    if (value.is_array()) {
      std::string joined;
      for (const auto& item : value) joined += (joined.empty() ? "" : ",") + scalar(item);
      out.push_back(joined);
    } else {
      out.push_back(scalar(value));
    }
  }
  return out;
}

std::string snapshot_path(const std::string& out, double t) {
  return out + "_t" + shortest(t) + ".csv";
}

int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Klein-Gordon-Zakharov solver and convergence harness", "kgz"};
  app.require_subcommand(1);
  // --h is the mesh size, so help is long-form only.
  app.set_help_flag("--help", "print this help");
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);

  SolveCommand solve;
  SweepCommand sweep;
  LimitCommand limit;
  std::uint64_t seed = 20240601;
  std::string config_unused;

  auto* solve_app = app.add_subcommand("solve", "run one KGZ simulation and write snapshots");
  auto* sweep_app = app.add_subcommand("sweep", "convergence or eps-limit sweep, CSV rate table");
  auto* limit_app = app.add_subcommand("limit-study", "KGZ vs KG-OP limit diagnostics");
  auto* check_app = app.add_subcommand("check", "run the property suite");
  for (auto* sub : {solve_app, sweep_app, limit_app, check_app}) {
    sub->option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
    sub->set_help_flag("--help", "print this help");
    sub->add_option("--config", config_unused, "JSON document with option values");
  }
  solve.add_to(*solve_app);
  sweep.add_to(*sweep_app);
  limit.add_to(*limit_app);
  check_app->add_option("--seed", seed, "random seed");

  try {
    args = expand_config(std::move(args));
    std::reverse(args.begin(), args.end());
    app.parse(args);
    if (solve_app->parsed()) return solve.execute(out);
    if (sweep_app->parsed()) return sweep.execute(out);
    if (limit_app->parsed()) return limit.execute(out);
    return run_check(seed, out);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kExitOk : kExitParameter;
  } catch (const ParameterError& e) {
    err << "parameter error: " << e.what() << '\n';
    return kExitParameter;
  } catch (const NumericalError& e) {
    err << "numerical failure: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitNumerical;
  }
}

}  // namespace kgz::cli
