#include "bbpg/study.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <limits>
#include <string>

#include "bbpg/errors.hpp"

namespace bbpg {

std::array<double, 12> LevelResult::error_columns() const {
  return {control.l1,         control.l2,         control.linf,
          state.l1,           state.l2,           state.linf,
          projected_state.l1, projected_state.l2, projected_state.linf,
          adjoint.l1,         adjoint.l2,         adjoint.linf};
}

std::vector<std::array<std::optional<double>, 12>> EocTable::eoc() const {
  std::vector<std::array<std::optional<double>, 12>> out(levels.size());
  for (std::size_t r = 1; r < levels.size(); ++r) {
    const auto prev = levels[r - 1].error_columns();
    const auto curr = levels[r].error_columns();
    for (std::size_t c = 0; c < 12; ++c) {
      out[r][c] = std::log2(prev[c] / curr[c]);
    }
  }
  return out;
}

bool operator==(const LevelResult& a, const LevelResult& b) {
  const auto ea = a.error_columns();
  const auto eb = b.error_columns();
  return a.level == b.level && a.alpha == b.alpha && a.h == b.h &&
         a.time_steps == b.time_steps && a.iterations == b.iterations &&
         std::equal(ea.begin(), ea.end(), eb.begin());
}

bool operator==(const EocTable& a, const EocTable& b) {
  return a.levels == b.levels;
}

LevelResult run_study_level(int level, const StudyConfig& config) {
  const BenchmarkProblem bench;
  const SpaceMesh mesh = build_uniform_mesh(level);
  const OperatorMatrix mass = assemble_mass(mesh);
  const OperatorMatrix stiffness = assemble_stiffness(mesh);
  const HeatSystem sys(mesh, mass, stiffness);
  const TimeGrid grid = build_time_grid(study_time_steps(level), bench.horizon);

  const ControlProblem problem = bench.make_problem(mesh);
  FixedPointOptions options;
  options.alpha = config.alpha_override.value_or(study_alpha(level));
  options.threshold = config.threshold;
  options.max_iter = config.max_iter;

  SolveReport report;
  try {
    report = fixed_point_solve(sys, grid, problem, options);
  } catch (const NonConvergenceError& err) {
    throw NonConvergenceError("study level " + std::to_string(level) + ": " +
                                  err.what(),
                              err.residual_history());
  }

  LevelResult result;
  result.level = level;
  result.alpha = options.alpha;
  result.h = mesh.h;
  result.time_steps = grid.intervals();
  result.iterations = report.iterations;

  result.control = control_error_norms(report.control.u, bench.exact_control());
  result.control_trajectory = report.control.u;

  const SeparableExact ybar{
      [&bench](double t) { return bench.state_coeff(t); },
      &BenchmarkProblem::g1,
      {}};
  const SeparableExact pbar{
      [&bench](double t) { return bench.adjoint_coeff(t); },
      &BenchmarkProblem::g1,
      {}};
  result.state = field_error_norms(mesh, report.state, ybar);
  result.projected_state = field_error_norms_dual(mesh, report.state, ybar);
  result.adjoint = field_error_norms(mesh, report.adjoint, pbar);
  return result;
}

EocTable run_convergence_study(const StudyConfig& config) {
  if (config.level_min < 1 || config.level_max < config.level_min) {
    throw ConfigError("run_convergence_study: bad level range");
  }
  EocTable table;
  const int count = config.level_max - config.level_min + 1;
  if (config.parallel && count > 1) {
    std::vector<std::future<LevelResult>> futures;
    futures.reserve(count);
    for (int level = config.level_min; level <= config.level_max; ++level) {
      futures.push_back(std::async(std::launch::async, run_study_level, level,
                                   config));
    }
    for (auto& f : futures) table.levels.push_back(f.get());
  } else {
    for (int level = config.level_min; level <= config.level_max; ++level) {
      table.levels.push_back(run_study_level(level, config));
    }
  }
  return table;
}

MeasureDiagnostic measure_diagnostic(const PiecewiseLinear& q,
                                     std::span<const double> alphas,
                                     const BoxBounds& bounds) {
  MeasureDiagnostic diag;
  diag.alphas.assign(alphas.begin(), alphas.end());
  diag.measures.reserve(alphas.size());

  for (double alpha : alphas) {
    if (!(alpha > 0.0)) {
      throw ConfigError("measure_diagnostic: alpha values must be positive");
    }
    const double lo = alpha * bounds.lower;
    const double hi = alpha * bounds.upper;
    double meas = 0.0;
    for (std::size_t i = 0; i + 1 < q.t.size(); ++i) {
      // Fraction of [t_i, t_{i+1}] where -q, linear from w0 to w1, lies in
      // (lo, hi): intersect the preimages of both level sets.
      const double w0 = -q.v[i];
      const double w1 = -q.v[i + 1];
      const double len = q.t[i + 1] - q.t[i];
      if (w0 == w1) {
        if (w0 > lo && w0 < hi) meas += len;
        continue;
      }
      const double s_lo = (lo - w0) / (w1 - w0);
      const double s_hi = (hi - w0) / (w1 - w0);
      const double s0 = std::clamp(std::min(s_lo, s_hi), 0.0, 1.0);
      const double s1 = std::clamp(std::max(s_lo, s_hi), 0.0, 1.0);
      meas += (s1 - s0) * len;
    }
    diag.measures.push_back(meas);
  }

  // Least-squares slope of log(meas) against log(alpha); the convention for
  // an everywhere-empty set is kappa = infinity.
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  std::size_t n = 0;
  for (std::size_t i = 0; i < diag.alphas.size(); ++i) {
    if (diag.measures[i] <= 0.0) continue;
    const double x = std::log(diag.alphas[i]);
    const double y = std::log(diag.measures[i]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++n;
  }
  if (n == 0) {
    diag.kappa_infinite = true;
    diag.kappa_hat = std::numeric_limits<double>::infinity();
  } else if (n == 1) {
    diag.kappa_hat = 0.0;
  } else {
    diag.kappa_hat = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  }
  return diag;
}

PiecewiseLinear sample_analytic_bstar(const BenchmarkProblem& problem,
                                      int samples_per_unit) {
  const int count =
      std::max(2, static_cast<int>(std::lround(samples_per_unit * problem.horizon)));
  std::vector<double> t(count + 1), v(count + 1);
  for (int i = 0; i <= count; ++i) {
    t[i] = problem.horizon * static_cast<double>(i) / count;
    v[i] = problem.bstar_adjoint_exact(t[i]);
  }
  return PiecewiseLinear(std::move(t), std::move(v));
}

}  // namespace bbpg
