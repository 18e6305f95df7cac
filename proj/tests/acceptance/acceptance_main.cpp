// Acceptance suite: runs the benchmark reproduction end to end and prints
// one PASS/FAIL line per criterion.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "bbpg/emit.hpp"
#include "bbpg/errors.hpp"
#include "bbpg/pcg.hpp"
#include "bbpg/study.hpp"
#include "../test_support.hpp"

using namespace bbpg;
using bbpg::testing::SystemBundle;

namespace {

constexpr double kPi = std::numbers::pi;

double g1(double x, double y) { return std::sin(kPi * x) * std::sin(kPi * y); }

struct Criterion {
  int id;
  std::string name;
  std::vector<std::string> failures;

  void expect(bool ok, const std::string& what) {
    if (!ok) failures.push_back(what);
  }
  void expect_range(double value, double lo, double hi, const std::string& what) {
    if (!(value >= lo && value <= hi)) {
      failures.push_back(what + " = " + format_double(value) + " outside [" +
                         format_double(lo) + ", " + format_double(hi) + "]");
    }
  }
  void expect_factor2(double value, double reference, const std::string& what) {
    if (!(value > 0.5 * reference && value < 2.0 * reference)) {
      failures.push_back(what + " = " + format_double(value) +
                         " not within factor 2 of " + format_double(reference));
    }
  }
};

std::vector<Criterion> all;

Criterion& criterion(int id, const std::string& name) {
  all.push_back(Criterion{id, name, {}});
  return all.back();
}

// Paper Tables 2-5, rows l = 4, 5, 6.
struct PaperColumn {
  const char* name;
  int column;  // index into LevelResult::error_columns()
  double values[3];
};

const PaperColumn kPaperColumns[] = {
    {"control L1", 0, {0.00395214, 0.00100074, 0.00026290}},
    {"control L2", 1, {0.02696386, 0.01375946, 0.00704586}},
    {"state L1", 3, {0.00314952, 0.00111871, 0.00039580}},
    {"state L2", 4, {0.00624197, 0.00218973, 0.00077075}},
    {"state Linf", 5, {0.02943581, 0.00994956, 0.00339060}},
    {"projected L1", 6, {0.00059757, 0.00015345, 0.00003968}},
    {"projected L2", 7, {0.00116777, 0.00029551, 0.00007581}},
    {"projected Linf", 8, {0.00526572, 0.00128779, 0.00032323}},
    {"adjoint L1", 9, {0.00003156, 0.00000786, 0.00000195}},
    {"adjoint L2", 10, {0.00006214, 0.00001530, 0.00000377}},
    {"adjoint Linf", 11, {0.00028508, 0.00006829, 0.00001649}},
};

struct EocWindow {
  const char* name;
  int column;
  double lo, hi;
};

const EocWindow kEocWindows[] = {
    {"control L1 EOC", 0, 1.75, 2.2},  {"control L2 EOC", 1, 0.85, 1.1},
    {"state L2 EOC", 4, 1.4, 1.65},    {"projected L2 EOC", 7, 1.8, 2.2},
    {"adjoint L2 EOC", 10, 1.85, 2.25},
};

void criterion1_coupled_study() {
  Criterion& c = criterion(1, "coupled convergence study (levels 1..6)");
  const auto start = std::chrono::steady_clock::now();

  StudyConfig config;
  config.level_min = 1;
  config.level_max = 6;
  EocTable table;
  try {
    table = run_convergence_study(config);
  } catch (const Error& err) {
    c.expect(false, std::string("study failed: ") + err.what());
    return;
  }
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();

  write_eoc_csv(table, "acceptance_eoc_table.csv");
  const auto eoc = table.eoc();
  std::printf("  level   alpha        M     err_u_L1      err_y_L2      err_ypi_L2    err_p_L2      iters\n");
  for (const auto& lev : table.levels) {
    std::printf("  %-5d %-10.6f %5d  %-12.8f  %-12.8f  %-12.8f  %-12.8f  %d\n",
                lev.level, lev.alpha, lev.time_steps, lev.control.l1,
                lev.state.l2, lev.projected_state.l2, lev.adjoint.l2,
                lev.iterations);
  }
  std::printf("  study wall time: %.1f s\n", seconds);

  c.expect(seconds < 900.0,
           "runtime " + format_double(seconds) + " s exceeds 900 s");

  // EOC windows at levels 4, 5, 6 (table rows 3..5).
  for (const auto& window : kEocWindows) {
    for (int row = 3; row <= 5; ++row) {
      const auto& cell = eoc[row][window.column];
      if (!cell) {
        c.expect(false, std::string(window.name) + ": missing");
        continue;
      }
      c.expect_range(*cell, window.lo, window.hi,
                     std::string(window.name) + " at level " +
                         std::to_string(table.levels[row].level));
    }
  }

  // Absolute errors within a factor of 2 of the reference tables.
  for (const auto& col : kPaperColumns) {
    for (int row = 3; row <= 5; ++row) {
      c.expect_factor2(table.levels[row].error_columns()[col.column],
                       col.values[row - 3],
                       std::string(col.name) + " at level " +
                           std::to_string(table.levels[row].level));
    }
  }

  // Error columns decrease monotonically from level 3 on.
  for (std::size_t r = 3; r < table.levels.size(); ++r) {
    const auto prev = table.levels[r - 1].error_columns();
    const auto curr = table.levels[r].error_columns();
    for (int col = 0; col < 12; ++col) {
      c.expect(curr[col] < prev[col],
               "column " + std::to_string(col) + " not decreasing at level " +
                   std::to_string(table.levels[r].level));
    }
  }
}

void criterion2_duality() {
  Criterion& c = criterion(2, "discrete duality identity (20 random tuples)");
  const SystemBundle sys(2);
  const TimeGrid grid = build_time_grid(8, 0.5);
  std::mt19937_64 rng(90210);
  for (int trial = 0; trial < 20; ++trial) {
    SeparableForcing f;
    f.add(bbpg::testing::random_time_coeff(0.5, rng),
          bbpg::testing::random_field(sys.mesh, rng));
    const SpatialField g = bbpg::testing::random_field(sys.mesh, rng);
    PCField hpc;
    hpc.grid = grid;
    for (int m = 0; m < grid.intervals(); ++m) {
      hpc.interval_values.push_back(bbpg::testing::random_field(sys.mesh, rng));
    }
    AdjointRhs h;
    h.pc = &hpc;
    h.smooth.add(bbpg::testing::random_time_coeff(0.5, rng),
                 bbpg::testing::random_field(sys.mesh, rng));
    const double residual = duality_residual(sys.system(), grid, f, g, h);
    c.expect(residual <= 1e-9, "trial " + std::to_string(trial) +
                                   " residual " + format_double(residual));
  }
}

void criterion3_supercloseness() {
  Criterion& c = criterion(3, "supercloseness order >= 1.8");
  std::vector<double> errors;
  for (int level : {2, 3, 4, 5}) {
    const SystemBundle sys(level);
    const SpatialField init =
        interpolate_nodal(sys.mesh, g1, TargetSpace::dirichlet);
    SeparableForcing forcing;
    forcing.add(TimeCoefficient::smooth([](double t) {
                  return -8.0 * kPi * std::sin(8.0 * kPi * t) +
                         2.0 * kPi * kPi * std::cos(8.0 * kPi * t);
                }),
                init);
    const TimeGrid grid = build_time_grid(6 << (level - 2), 0.5);
    const PCField y = solve_state(sys.system(), grid, forcing, init);

    SeparableExact exact;
    exact.space = g1;
    exact.time_coeff = [grid](double t) {
      const int m = grid.interval_of(t);
      const double a = grid.nodes[m];
      const double b = grid.nodes[m + 1];
      return (std::sin(8.0 * kPi * b) - std::sin(8.0 * kPi * a)) /
             (8.0 * kPi * (b - a));
    };
    errors.push_back(field_error_norms(sys.mesh, y, exact).l2);
  }
  const double order = std::log2(errors.front() / errors.back()) / 3.0;
  std::printf("  supercloseness observed order: %.3f\n", order);
  c.expect(order >= 1.8, "observed order " + format_double(order));
}

void criterion4_adjoint_order() {
  Criterion& c = criterion(4, "adjoint scheme order >= 1.8");
  const BenchmarkProblem bench;
  const SeparableExact pbar{
      [&bench](double t) { return bench.adjoint_coeff(t); }, g1, {}};
  std::vector<double> errors;
  for (int level : {2, 3, 4, 5}) {
    const SystemBundle sys(level);
    const SpatialField profile =
        interpolate_nodal(sys.mesh, g1, TargetSpace::dirichlet);
    AdjointRhs rhs;
    rhs.smooth.add(TimeCoefficient::smooth([&bench](double t) {
                     return bench.state_coeff(t) - bench.desired_coeff(t);
                   }),
                   profile);
    const TimeGrid grid = build_time_grid(1 << level, 0.5);
    const PLField p = solve_adjoint(sys.system(), grid, rhs);
    errors.push_back(field_error_norms(sys.mesh, p, pbar).l2);
  }
  const double order = std::log2(errors.front() / errors.back()) / 3.0;
  std::printf("  adjoint observed order: %.3f\n", order);
  c.expect(order >= 1.8, "observed order " + format_double(order));
}

void criterion5_gradient() {
  Criterion& c = criterion(5, "gradient exactness (10 random directions)");
  const SystemBundle sys(2);
  const BenchmarkProblem bench;
  const TimeGrid grid = build_time_grid(study_time_steps(2), bench.horizon);
  const ControlProblem problem = bench.make_problem(sys.mesh);
  const double alpha = study_alpha(2);

  std::mt19937_64 rng(555);
  std::uniform_real_distribution<double> dist(bench.bounds.lower,
                                              bench.bounds.upper);
  const auto random_admissible = [&] {
    std::vector<double> values(grid.nodes.size());
    for (auto& v : values) v = dist(rng);
    return PiecewiseLinear(grid.nodes, values);
  };

  const PiecewiseLinear u = random_admissible();
  const PCField state = solve_state(
      sys.system(), grid, forcing_with_control(problem, u), problem.initial_value);
  AdjointRhs rhs;
  rhs.pc = &state;
  for (const auto& term : problem.desired_state.terms) {
    TimeCoefficient neg = term.coeff;
    auto base = neg.fn;
    neg.fn = [base](double t) { return -base(t); };
    rhs.smooth.terms.push_back({neg, term.profile});
  }
  const PLField p = solve_adjoint(sys.system(), grid, rhs);
  const ScalarPL q = apply_Bstar(p, problem.control_profile, sys.mass);
  const PiecewiseLinear grad =
      u.scaled(alpha).axpy(1.0, q.as_piecewise_linear());

  for (int trial = 0; trial < 10; ++trial) {
    const PiecewiseLinear direction = random_admissible().axpy(-1.0, u);
    const double eps = 0.1;
    const double jp = evaluate_objective(sys.system(), grid, problem, alpha,
                                         u.axpy(eps, direction));
    const double jm = evaluate_objective(sys.system(), grid, problem, alpha,
                                         u.axpy(-eps, direction));
    const double fd = (jp - jm) / (2.0 * eps);
    const double pairing = grad.inner(direction);
    const double rel = std::abs(fd - pairing) /
                       std::max({std::abs(fd), std::abs(pairing), 1e-300});
    c.expect(rel <= 1e-8, "direction " + std::to_string(trial) +
                              " relative error " + format_double(rel));
  }
}

void criterion6_optimality() {
  Criterion& c = criterion(6, "feasibility and variational inequality");
  const SystemBundle sys(3);
  const BenchmarkProblem bench;
  const TimeGrid grid = build_time_grid(study_time_steps(3), bench.horizon);
  const ControlProblem problem = bench.make_problem(sys.mesh);
  FixedPointOptions options;
  options.alpha = study_alpha(3);

  SolveReport report;
  try {
    report = fixed_point_solve(sys.system(), grid, problem, options);
  } catch (const Error& err) {
    c.expect(false, std::string("solve failed: ") + err.what());
    return;
  }

  bool feasible = true;
  for (double v : report.control.u.v) {
    feasible = feasible && v >= bench.bounds.lower && v <= bench.bounds.upper;
  }
  for (int i = 0; i <= 20000; ++i) {
    const double t = bench.horizon * i / 20000.0;
    const double v = report.control.u(t);
    feasible = feasible && v >= bench.bounds.lower && v <= bench.bounds.upper;
  }
  c.expect(feasible, "control leaves the admissible box");

  const PiecewiseLinear grad = report.control.u.scaled(options.alpha)
                                   .axpy(1.0, report.control.q.as_piecewise_linear());
  std::mt19937_64 rng(8080);
  std::uniform_real_distribution<double> dist(bench.bounds.lower,
                                              bench.bounds.upper);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<double> values(grid.nodes.size());
    for (auto& v : values) v = dist(rng);
    const PiecewiseLinear v(grid.nodes, values);
    const PiecewiseLinear direction = v.axpy(-1.0, report.control.u);
    const double pairing = grad.inner(direction);
    const double scale = std::sqrt(grad.norm_l2_sq()) *
                             std::sqrt(direction.norm_l2_sq()) +
                         1e-300;
    c.expect(pairing >= -1e-8 * scale,
             "variational inequality violated: " + format_double(pairing));
  }
}

void criterion7_kappa() {
  Criterion& c = criterion(7, "kappa diagnostic");
  const BenchmarkProblem bench;
  std::vector<double> alphas;
  for (int e = 6; e <= 12; ++e) alphas.push_back(std::exp2(-e));
  const MeasureDiagnostic diag =
      measure_diagnostic(sample_analytic_bstar(bench), alphas, bench.bounds);
  std::printf("  fitted kappa on analytic pairing: %.4f\n", diag.kappa_hat);
  c.expect_range(diag.kappa_hat, 0.85, 1.15, "kappa_hat");

  // Synthetic linear case: q crossing zero mid-domain has meas(I_alpha)
  // exactly 2 alpha under bounds (-1, 1).
  const PiecewiseLinear centered({0.0, 1.0}, {-0.5, 0.5});
  std::vector<double> small;
  for (int e = 3; e <= 9; ++e) small.push_back(std::exp2(-e));
  const MeasureDiagnostic lin =
      measure_diagnostic(centered, small, BoxBounds{-1.0, 1.0});
  for (std::size_t i = 0; i < small.size(); ++i) {
    const double expected = 2.0 * small[i];
    c.expect(std::abs(lin.measures[i] - expected) <= 1e-14 * expected,
             "linear-q measure at alpha " + format_double(small[i]) + ": " +
                 format_double(lin.measures[i]));
  }
}

void criterion8_fem_sanity() {
  Criterion& c = criterion(8, "FEM sanity: eigenvalue and mass total");
  const SystemBundle sys(5);

  std::vector<double> ones(sys.mesh.node_count(), 1.0);
  const auto m1 = sys.mass.full.multiply(ones);
  double total = 0.0;
  for (double v : m1) total += v;
  c.expect(std::abs(total - 1.0) <= 1e-14,
           "mass total " + format_double(total));

  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> dist(0.1, 1.0);
  std::vector<double> x(sys.stiffness.interior.n);
  for (auto& v : x) v = dist(rng);
  double lambda = 0.0;
  for (int it = 0; it < 200; ++it) {
    const auto mx = sys.mass.interior.multiply(x);
    x = pcg_jacobi(sys.stiffness.interior, mx).x;
    const double nrm = std::sqrt(dot(x, x));
    for (auto& v : x) v /= nrm;
    const double next = dot(sys.stiffness.interior.multiply(x), x) /
                        dot(sys.mass.interior.multiply(x), x);
    if (it > 3 && std::abs(next - lambda) < 1e-12 * next) {
      lambda = next;
      break;
    }
    lambda = next;
  }
  const double exact = 2.0 * kPi * kPi;
  std::printf("  smallest (K, M) eigenvalue at level 5: %.6f (2 pi^2 = %.6f)\n",
              lambda, exact);
  c.expect(std::abs(lambda - exact) / exact <= 0.02,
           "eigenvalue " + format_double(lambda));
}

}  // namespace

int main() {
  criterion1_coupled_study();
  criterion2_duality();
  criterion3_supercloseness();
  criterion4_adjoint_order();
  criterion5_gradient();
  criterion6_optimality();
  criterion7_kappa();
  criterion8_fem_sanity();

  int failed = 0;
  std::printf("\n");
  for (const auto& c : all) {
    if (c.failures.empty()) {
      std::printf("PASS criterion %d: %s\n", c.id, c.name.c_str());
    } else {
      ++failed;
      std::printf("FAIL criterion %d: %s\n", c.id, c.name.c_str());
      for (const auto& f : c.failures) {
        std::printf("     - %s\n", f.c_str());
      }
    }
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(all.size()) - failed,
              all.size());
  return failed == 0 ? 0 : 1;
}
