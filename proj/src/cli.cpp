#include "bbpg/cli.hpp"

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "bbpg/emit.hpp"
#include "bbpg/errors.hpp"
#include "bbpg/study.hpp"

namespace bbpg {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

struct LevelRange {
  int lo = 1;
  int hi = 6;
};

LevelRange parse_level_range(const std::string& text) {
  const auto pos = text.find("..");
  if (pos == std::string::npos) {
    throw ConfigError("levels must be given as A..B, got '" + text + "'");
  }
  try {
    LevelRange range;
    range.lo = std::stoi(text.substr(0, pos));
    range.hi = std::stoi(text.substr(pos + 2));
    if (range.lo < 1 || range.hi < range.lo) {
      throw ConfigError("invalid level range '" + text + "'");
    }
    return range;
  } catch (const std::exception&) {
    throw ConfigError("invalid level range '" + text + "'");
  }
}

void apply_json_config(const fs::path& file, const CLI::App& cmd,
                       RunConfig& config, std::string& levels_text,
                       std::string& out_flag) {
  std::ifstream in(file);
  if (!in) {
    throw IoError("cannot open config file: " + file.string());
  }
  json doc;
  try {
    in >> doc;
  } catch (const json::exception& err) {
    throw ConfigError("malformed JSON in " + file.string() + ": " + err.what());
  }
  if (!doc.is_object()) {
    throw ConfigError("config file must hold a flat JSON object");
  }

  // A flag given on the command line wins over the file value.
  const auto given = [&](const std::string& flag) {
    const CLI::Option* opt = cmd.get_option_no_throw(flag);
    return opt != nullptr && opt->count() > 0;
  };

  try {
    for (const auto& [key, value] : doc.items()) {
      if (key == "level") {
        if (!given("--level")) config.level = value.get<int>();
      } else if (key == "levels") {
        if (!given("--levels")) levels_text = value.get<std::string>();
      } else if (key == "alpha") {
        if (!given("--alpha")) config.alpha = value.get<double>();
      } else if (key == "t0") {
        if (!given("--t0")) config.t0 = value.get<double>();
      } else if (key == "max_iter") {
        if (!given("--max-iter")) config.max_iter = value.get<int>();
      } else if (key == "out") {
        if (!given("--out")) out_flag = value.get<std::string>();
      } else if (key == "parallel_levels") {
        if (!given("--parallel-levels"))
          config.parallel_levels = value.get<bool>();
      } else if (key == "analytic") {
        if (!given("--analytic")) config.analytic = value.get<bool>();
      } else if (key == "seed") {
        if (!given("--seed")) config.seed = value.get<std::uint64_t>();
      } else {
        throw ConfigError("unknown config key '" + key + "' in " +
                          file.string());
      }
    }
  } catch (const json::exception& err) {
    throw ConfigError("bad value type in " + file.string() + ": " + err.what());
  }
}

void validate(RunConfig& config) {
  if (config.alpha && !(*config.alpha > 0.0)) {
    throw ConfigError("alpha must be positive");
  }
  if (!(config.t0 > 0.0)) {
    throw ConfigError("t0 must be positive");
  }
  if (config.max_iter < 1) {
    throw ConfigError("max-iter must be at least 1");
  }
  if (config.level < 1 || config.level > 12) {
    throw ConfigError("level must lie in [1, 12]");
  }
  if (config.out_dir.empty()) {
    if (const char* env = std::getenv("BANGBANG_PG_OUT")) {
      config.out_dir = env;
    }
  }
  if (config.out_dir.empty()) {
    config.out_dir = "out";
  }
}

json run_metadata(const RunConfig& config) {
  json meta;
  meta["t0"] = config.t0;
  meta["max_iter"] = config.max_iter;
  meta["pcg_rel_tol"] = 1e-12;
  meta["time_step_rule"] = "M = round(2^(3*level/2 + 1))";
  meta["alpha_rule"] = "alpha = 2^(-2*level) unless overridden";
  meta["seed"] = config.seed;
  return meta;
}

void write_metadata(const fs::path& dir, json meta, double seconds) {
  meta["wall_time_seconds"] = seconds;
  write_text_file(dir / "metadata.json", meta.dump(2) + "\n");
}

int dispatch_solve(const RunConfig& config, const fs::path& out) {
  const auto start = std::chrono::steady_clock::now();
  const BenchmarkProblem bench;
  const SpaceMesh mesh = build_uniform_mesh(config.level);
  const OperatorMatrix mass = assemble_mass(mesh);
  const OperatorMatrix stiffness = assemble_stiffness(mesh);
  const HeatSystem sys(mesh, mass, stiffness);
  const TimeGrid grid =
      build_time_grid(study_time_steps(config.level), bench.horizon);

  FixedPointOptions options;
  options.alpha = config.alpha.value_or(study_alpha(config.level));
  options.threshold = config.t0;
  options.max_iter = config.max_iter;

  const SolveReport report =
      fixed_point_solve(sys, grid, bench.make_problem(mesh), options);
  const Norms3 err = control_error_norms(report.control.u, bench.exact_control());

  write_trajectory_csv(report.control.u, bench.exact_control(),
                       out / "trajectory.csv");

  std::cout << "level " << config.level << ": alpha=" << format_double(options.alpha)
            << " M=" << grid.intervals() << " h=" << format_double(mesh.h)
            << "\n"
            << "converged after " << report.iterations
            << " sweeps, final residual "
            << format_double(report.residual_history.back()) << "\n"
            << "objective " << format_double(report.objective_value) << "\n"
            << "control error L1=" << format_double(err.l1)
            << " L2=" << format_double(err.l2)
            << " Linf=" << format_double(err.linf) << "\n";

  json meta = run_metadata(config);
  meta["command"] = "solve";
  meta["level"] = config.level;
  meta["alpha"] = options.alpha;
  meta["time_steps"] = grid.intervals();
  meta["mesh_nodes"] = mesh.node_count();
  meta["iterations"] = report.iterations;
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  write_metadata(out, std::move(meta), seconds);
  return 0;
}

int dispatch_study(const RunConfig& config, const fs::path& out) {
  const auto start = std::chrono::steady_clock::now();
  StudyConfig study;
  study.level_min = config.level_min;
  study.level_max = config.level_max;
  study.alpha_override = config.alpha;
  study.threshold = config.t0;
  study.max_iter = config.max_iter;
  study.parallel = config.parallel_levels;

  const EocTable table = run_convergence_study(study);
  write_eoc_csv(table, out / "eoc_table.csv");
  write_eoc_markdown(table, out / "eoc_table.md");

  const BenchmarkProblem bench;
  for (const auto& level : table.levels) {
    if (level.control_trajectory.t.size() < 2) continue;
    write_trajectory_csv(
        level.control_trajectory, bench.exact_control(),
        out / ("trajectory_level" + std::to_string(level.level) + ".csv"));
  }

  const auto eoc = table.eoc();
  std::cout << "level  err_u_L1    eoc   err_p_L2    eoc   iters\n";
  for (std::size_t r = 0; r < table.levels.size(); ++r) {
    const auto& lev = table.levels[r];
    std::cout << lev.level << "  " << format_double(lev.control.l1) << "  "
              << (eoc[r][0] ? format_double(*eoc[r][0]) : "/") << "  "
              << format_double(lev.adjoint.l2) << "  "
              << (eoc[r][10] ? format_double(*eoc[r][10]) : "/") << "  "
              << lev.iterations << "\n";
  }

  json meta = run_metadata(config);
  meta["command"] = "study";
  meta["level_min"] = config.level_min;
  meta["level_max"] = config.level_max;
  meta["parallel_levels"] = config.parallel_levels;
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  write_metadata(out, std::move(meta), seconds);
  return 0;
}

int dispatch_diagnose(const RunConfig& config, const fs::path& out) {
  const auto start = std::chrono::steady_clock::now();
  const BenchmarkProblem bench;
  std::vector<double> alphas;
  for (int e = 6; e <= 12; ++e) alphas.push_back(std::exp2(-e));

  PiecewiseLinear q = [&] {
    if (config.analytic) {
      return sample_analytic_bstar(bench);
    }
    const SpaceMesh mesh = build_uniform_mesh(config.level);
    const OperatorMatrix mass = assemble_mass(mesh);
    const OperatorMatrix stiffness = assemble_stiffness(mesh);
    const HeatSystem sys(mesh, mass, stiffness);
    const TimeGrid grid =
        build_time_grid(study_time_steps(config.level), bench.horizon);
    FixedPointOptions options;
    options.alpha = config.alpha.value_or(study_alpha(config.level));
    options.threshold = config.t0;
    options.max_iter = config.max_iter;
    const SolveReport report =
        fixed_point_solve(sys, grid, bench.make_problem(mesh), options);
    return report.control.q.as_piecewise_linear();
  }();

  const MeasureDiagnostic diag = measure_diagnostic(q, alphas, bench.bounds);
  write_measure_csv(diag, out / "measure.csv");

  std::cout << "alpha        meas(I_alpha)\n";
  for (std::size_t i = 0; i < diag.alphas.size(); ++i) {
    std::cout << format_double(diag.alphas[i]) << "  "
              << format_double(diag.measures[i]) << "\n";
  }
  std::cout << "kappa_hat = "
            << (diag.kappa_infinite ? "inf" : format_double(diag.kappa_hat))
            << "\n";

  json meta = run_metadata(config);
  meta["command"] = "diagnose-kappa";
  meta["analytic"] = config.analytic;
  if (!config.analytic) meta["level"] = config.level;
  meta["kappa_hat"] = diag.kappa_infinite
                          ? json("inf")
                          : json(diag.kappa_hat);
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  write_metadata(out, std::move(meta), seconds);
  return 0;
}

}  // namespace

RunConfig parse_config(const std::vector<std::string>& args) {
  CLI::App app{"Variational discretization of a regularized parabolic "
               "control problem: single solves, coupled convergence studies "
               "and the measure-condition diagnostic."};
  app.require_subcommand(1);

  RunConfig config;
  std::string levels_text;
  std::string out_flag;
  std::string config_file;
  double alpha_flag = 0.0;

  const auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--alpha", alpha_flag, "regularization weight override");
    cmd->add_option("--t0", config.t0, "fixed-point stopping threshold");
    cmd->add_option("--max-iter", config.max_iter, "fixed-point sweep cap");
    cmd->add_option("--out", out_flag, "output directory");
    cmd->add_option("--seed", config.seed, "seed recorded in run metadata");
    cmd->add_option("--config", config_file, "JSON config file (flat keys)");
  };

  CLI::App* solve = app.add_subcommand("solve", "single benchmark solve");
  solve->add_option("--level", config.level, "refinement level");
  add_common(solve);

  CLI::App* study = app.add_subcommand("study", "coupled convergence study");
  study->add_option("--levels", levels_text, "level range A..B");
  study->add_flag("--parallel-levels", config.parallel_levels,
                  "run study levels on a worker pool");
  add_common(study);

  CLI::App* diagnose =
      app.add_subcommand("diagnose-kappa", "measure-condition diagnostic");
  diagnose->add_option("--level", config.level, "refinement level");
  diagnose->add_flag("--analytic", config.analytic,
                     "use the analytic adjoint pairing");
  add_common(diagnose);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    std::cout << app.help() << std::flush;
    throw HelpRequested{};
  } catch (const CLI::ParseError& e) {
    throw ConfigError(std::string("usage error: ") + e.what() + "\n" +
                      app.help());
  }

  CLI::App* active = app.get_subcommands().front();
  if (active == solve) config.command = Command::solve;
  if (active == study) config.command = Command::study;
  if (active == diagnose) config.command = Command::diagnose_kappa;

  if (!config_file.empty()) {
    apply_json_config(config_file, *active, config, levels_text, out_flag);
  }
  if (active->get_option_no_throw("--alpha") != nullptr &&
      active->get_option_no_throw("--alpha")->count() > 0) {
    config.alpha = alpha_flag;
  }
  if (!levels_text.empty()) {
    const LevelRange range = parse_level_range(levels_text);
    config.level_min = range.lo;
    config.level_max = range.hi;
  }
  config.out_dir = out_flag;
  validate(config);
  return config;
}

int main_dispatch(const RunConfig& config) {
  const fs::path out(config.out_dir);
  std::error_code ec;
  fs::create_directories(out, ec);
  if (ec) {
    throw IoError("cannot create output directory " + out.string() + ": " +
                  ec.message());
  }
  switch (config.command) {
    case Command::solve:
      return dispatch_solve(config, out);
    case Command::study:
      return dispatch_study(config, out);
    case Command::diagnose_kappa:
      return dispatch_diagnose(config, out);
  }
  return 0;
}

int run_cli(int argc, const char* const* argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  try {
    if (args.empty()) {
      throw ConfigError(
          "no command given; use one of: solve, study, diagnose-kappa "
          "(--help for details)");
    }
    const RunConfig config = parse_config(args);
    return main_dispatch(config);
  } catch (const HelpRequested&) {
    return 0;
  } catch (const ConfigError& err) {
    std::cerr << err.what() << "\n";
    return 2;
  } catch (const SolverError& err) {
    std::cerr << err.what() << "\n";
    return 3;
  } catch (const NonConvergenceError& err) {
    std::cerr << err.what() << "\n";
    return 3;
  } catch (const IoError& err) {
    std::cerr << err.what() << "\n";
    return 4;
  } catch (const DataError& err) {
    std::cerr << err.what() << "\n";
    return 2;
  }
}

}  // namespace bbpg
