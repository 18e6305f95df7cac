#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "bbpg/benchmark.hpp"
#include "bbpg/errors.hpp"
#include "bbpg/error_norms.hpp"
#include "test_support.hpp"

using namespace bbpg;
using bbpg::testing::SystemBundle;

namespace {

constexpr double kPi = std::numbers::pi;

double g1(double x, double y) { return std::sin(kPi * x) * std::sin(kPi * y); }

PiecewiseLinear random_admissible(const TimeGrid& grid, const BoxBounds& bounds,
                                  std::mt19937_64& rng) {
  std::uniform_real_distribution<double> dist(bounds.lower, bounds.upper);
  std::vector<double> values(grid.nodes.size());
  for (auto& v : values) v = dist(rng);
  return PiecewiseLinear(grid.nodes, values);
}

}  // namespace

TEST_CASE("apply_Bstar") {
  const SystemBundle sys(3);
  const TimeGrid grid = build_time_grid(4, 0.5);
  const SpatialField gh = interpolate_nodal(sys.mesh, g1, TargetSpace::dirichlet);

  PLField zero;
  zero.grid = grid;
  zero.node_values.assign(grid.intervals() + 1, SpatialField(sys.mesh.node_count()));
  for (double v : apply_Bstar(zero, gh, sys.mass).node_values) CHECK(v == 0.0);

  // p identically g1 pairs to (g1, g1) = 0.25 + O(h^2) on every node.
  PLField pg;
  pg.grid = grid;
  pg.node_values.assign(grid.intervals() + 1, gh);
  for (double v : apply_Bstar(pg, gh, sys.mass).node_values) {
    CHECK(std::abs(v - 0.25) < 0.02);
  }

  std::mt19937_64 rng(3);
  PLField p1 = pg, p2 = pg;
  for (auto& f : p1.node_values) f = bbpg::testing::random_field(sys.mesh, rng);
  for (auto& f : p2.node_values) f = bbpg::testing::random_field(sys.mesh, rng);
  PLField sum;
  sum.grid = grid;
  for (std::size_t m = 0; m < p1.node_values.size(); ++m) {
    SpatialField s(sys.mesh.node_count());
    for (std::size_t v = 0; v < s.size(); ++v) {
      s.values[v] = p1.node_values[m].values[v] + p2.node_values[m].values[v];
    }
    sum.node_values.push_back(std::move(s));
  }
  const ScalarPL q1 = apply_Bstar(p1, gh, sys.mass);
  const ScalarPL q2 = apply_Bstar(p2, gh, sys.mass);
  const ScalarPL qs = apply_Bstar(sum, gh, sys.mass);
  for (std::size_t m = 0; m < qs.node_values.size(); ++m) {
    CHECK(qs.node_values[m] ==
          doctest::Approx(q1.node_values[m] + q2.node_values[m]).epsilon(1e-14));
  }
}

TEST_CASE("project_control") {
  CHECK_THROWS_AS(
      project_control(ScalarPL{build_time_grid(2, 1.0), {0.0, 0.0, 0.0}}, 0.0,
                      BoxBounds{0.0, 1.0}),
      ConfigError);
  CHECK_THROWS_AS(
      project_control(ScalarPL{build_time_grid(2, 1.0), {0.0, 0.0, 0.0}}, -1.0,
                      BoxBounds{0.0, 1.0}),
      ConfigError);

  // q = 0 clamps to the lower bound.
  const TimeGrid grid = build_time_grid(4, 1.0);
  const ClampedControl flat = project_control(
      ScalarPL{grid, std::vector<double>(5, 0.0)}, 1.0, BoxBounds{0.2, 0.4});
  for (double v : flat.u.v) CHECK(v == 0.2);

  // q(t) = t - 1/2 on a single interval: u = max(0, 1/2 - t) with a
  // breakpoint at t = 1/2.
  const TimeGrid one = make_time_grid({0.0, 1.0});
  const ClampedControl ramp = project_control(ScalarPL{one, {-0.5, 0.5}}, 1.0,
                                              BoxBounds{0.0, 1.0});
  REQUIRE(ramp.u.t.size() == 3);
  CHECK(ramp.u.t[1] == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(ramp.u(0.0) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(ramp.u(0.5) == 0.0);
  CHECK(ramp.u(1.0) == 0.0);
  CHECK(ramp.u(0.25) == doctest::Approx(0.25).epsilon(1e-15));

  // -q/alpha >= b everywhere: all values pinned to the upper bound, no
  // crossing breakpoints beyond the grid nodes.
  const ClampedControl top = project_control(
      ScalarPL{grid, std::vector<double>(5, -10.0)}, 1.0, BoxBounds{0.2, 0.4});
  CHECK(top.u.t.size() == grid.nodes.size());
  for (double v : top.u.v) CHECK(v == 0.4);

  // At most two crossings inside any interval.
  const ClampedControl wild = project_control(
      ScalarPL{grid, {-3.0, 2.0, -1.0, 4.0, 0.1}}, 1.0, BoxBounds{-1.0, 1.0});
  for (std::size_t i = 0; i + 1 < grid.nodes.size(); ++i) {
    int inside = 0;
    for (double t : wild.u.t) {
      if (t > grid.nodes[i] && t < grid.nodes[i + 1]) ++inside;
    }
    CHECK(inside <= 2);
  }
  for (double v : wild.u.v) {
    CHECK(v >= -1.0);
    CHECK(v <= 1.0);
  }
}

TEST_CASE("control forcing integrals") {
  const TimeGrid grid = build_time_grid(4, 1.0);
  ClampedControl c;
  c.u = PiecewiseLinear::constant(0.0, 1.0, 3.0);
  const auto w = control_forcing_integrals(c, grid);
  CHECK(w[1] == doctest::Approx(3.0 * 0.25).epsilon(1e-15));
  CHECK(w[2] == doctest::Approx(3.0 * 0.25).epsilon(1e-15));

  // u = max(0, 1/2 - t) against the descending hat on one interval [0, 1]:
  // integral_0^{1/2} (1/2 - t)(1 - t) dt = 5/48.
  const TimeGrid one = make_time_grid({0.0, 1.0});
  ClampedControl ramp;
  ramp.u = PiecewiseLinear({0.0, 0.5, 1.0}, {0.5, 0.0, 0.0});
  const auto wr = control_forcing_integrals(ramp, one);
  CHECK(wr[0] == doctest::Approx(5.0 / 48.0).epsilon(1e-14));

  ClampedControl zero;
  zero.u = PiecewiseLinear::constant(0.0, 1.0, 0.0);
  for (double v : control_forcing_integrals(zero, grid)) CHECK(v == 0.0);
}

TEST_CASE("optimality residual") {
  const TimeGrid grid = build_time_grid(4, 0.5);
  const ScalarPL q{grid, {0.3, -0.2, 0.05, -0.4, 0.25}};
  const BoxBounds bounds{0.2, 0.4};
  const ClampedControl u = project_control(q, 0.5, bounds);
  CHECK(optimality_residual(u.u, q, 0.5, bounds) < 1e-14);

  // u stuck at the lower bound while the clamp target sits at the upper one.
  const ScalarPL strong{grid, std::vector<double>(5, -10.0)};
  const PiecewiseLinear at_a = PiecewiseLinear::constant(0.0, 0.5, 0.2);
  CHECK(optimality_residual(at_a, strong, 1.0, bounds) ==
        doctest::Approx(0.2).epsilon(1e-15));
}

TEST_CASE("fixed point: large alpha collapses to the lower bound") {
  const SystemBundle sys(2);
  const BenchmarkProblem bench;
  const TimeGrid grid = build_time_grid(study_time_steps(2), bench.horizon);
  FixedPointOptions options;
  options.alpha = 1e3;
  const SolveReport report =
      fixed_point_solve(sys.system(), grid, bench.make_problem(sys.mesh), options);
  CHECK(report.iterations <= 3);
  for (double v : report.control.u.v) CHECK(v == 0.2);
  REQUIRE(!report.residual_history.empty());
  CHECK(report.residual_history.back() < options.threshold);
}

TEST_CASE("fixed point: benchmark level 3 control error") {
  const SystemBundle sys(3);
  const BenchmarkProblem bench;
  const TimeGrid grid = build_time_grid(study_time_steps(3), bench.horizon);
  FixedPointOptions options;
  options.alpha = study_alpha(3);
  const SolveReport report =
      fixed_point_solve(sys.system(), grid, bench.make_problem(sys.mesh), options);

  const Norms3 err = control_error_norms(report.control.u, bench.exact_control());
  CHECK(err.l1 > 0.5 * 0.01551730);
  CHECK(err.l1 < 2.0 * 0.01551730);

  // Feasibility is exact at breakpoints and on a dense sample.
  for (double v : report.control.u.v) {
    CHECK(v >= bench.bounds.lower);
    CHECK(v <= bench.bounds.upper);
  }
  for (int i = 0; i <= 10000; ++i) {
    const double t = bench.horizon * i / 10000.0;
    const double v = report.control.u(t);
    CHECK(v >= bench.bounds.lower);
    CHECK(v <= bench.bounds.upper);
  }

  // Monotone residual tail.
  const auto& hist = report.residual_history;
  REQUIRE(hist.size() >= 3);
  CHECK(hist[hist.size() - 1] <= hist[hist.size() - 2]);
  CHECK(hist[hist.size() - 2] <= hist[hist.size() - 3]);

  // One-step Lipschitz bound of the projection.
  CHECK(optimality_residual(report.control.u, report.control.q, options.alpha,
                            bench.bounds) <=
        options.threshold / options.alpha * (1.0 + 1e-12));
}

TEST_CASE("fixed point: max_iter exhaustion reports the history") {
  const SystemBundle sys(3);
  const BenchmarkProblem bench;
  const TimeGrid grid = build_time_grid(study_time_steps(3), bench.horizon);
  FixedPointOptions options;
  options.alpha = study_alpha(3);
  options.max_iter = 1;
  try {
    (void)fixed_point_solve(sys.system(), grid, bench.make_problem(sys.mesh),
                            options);
    FAIL("expected NonConvergenceError");
  } catch (const NonConvergenceError& err) {
    CHECK(err.residual_history().size() == 1);
    CHECK(err.residual_history().front() > 0.0);
  }
}

TEST_CASE("objective: closed forms and alpha scaling") {
  const SystemBundle sys(2);
  const BenchmarkProblem bench;
  const TimeGrid grid = build_time_grid(8, bench.horizon);
  const ControlProblem problem = bench.make_problem(sys.mesh);

  // Zero data everywhere gives a zero objective.
  ControlProblem trivial;
  trivial.bounds = problem.bounds;
  trivial.control_profile = problem.control_profile;
  trivial.initial_value = SpatialField(sys.mesh.node_count());
  const PiecewiseLinear zero = PiecewiseLinear::constant(0.0, bench.horizon, 0.0);
  CHECK(evaluate_objective(sys.system(), grid, trivial, 1.0, zero) == 0.0);

  // Doubling alpha adds exactly (alpha/2) |u|^2.
  std::mt19937_64 rng(5);
  const PiecewiseLinear u = random_admissible(grid, problem.bounds, rng);
  const PCField state = solve_state(
      sys.system(), grid, forcing_with_control(problem, u), problem.initial_value);
  const double alpha = 0.01;
  const double j1 = objective(sys.system(), grid, problem, alpha, u, state);
  const double j2 = objective(sys.system(), grid, problem, 2.0 * alpha, u, state);
  CHECK(j2 - j1 == doctest::Approx(0.5 * alpha * u.norm_l2_sq()).epsilon(1e-12));
}

TEST_CASE("objective gradient matches the adjoint representation") {
  const SystemBundle sys(2);
  const BenchmarkProblem bench;
  const TimeGrid grid = build_time_grid(8, bench.horizon);
  const ControlProblem problem = bench.make_problem(sys.mesh);
  const double alpha = study_alpha(2);

  std::mt19937_64 rng(77);
  const PiecewiseLinear u = random_admissible(grid, problem.bounds, rng);

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
  const PiecewiseLinear grad = u.scaled(alpha).axpy(1.0, q.as_piecewise_linear());

  for (int trial = 0; trial < 3; ++trial) {
    const PiecewiseLinear v = random_admissible(grid, problem.bounds, rng);
    const PiecewiseLinear direction = v.axpy(-1.0, u);
    const double eps = 0.1;
    const double jp = evaluate_objective(sys.system(), grid, problem, alpha,
                                         u.axpy(eps, direction));
    const double jm = evaluate_objective(sys.system(), grid, problem, alpha,
                                         u.axpy(-eps, direction));
    const double fd = (jp - jm) / (2.0 * eps);
    const double pairing = grad.inner(direction);
    CHECK(fd == doctest::Approx(pairing).epsilon(1e-8));
  }
}

TEST_CASE("variational inequality and argmin consistency") {
  const SystemBundle sys(2);
  const BenchmarkProblem bench;
  const TimeGrid grid = build_time_grid(study_time_steps(2), bench.horizon);
  const ControlProblem problem = bench.make_problem(sys.mesh);

  FixedPointOptions options;
  options.alpha = study_alpha(2);
  options.threshold = 1e-12;
  const SolveReport report =
      fixed_point_solve(sys.system(), grid, problem, options);

  const PiecewiseLinear grad = report.control.u.scaled(options.alpha)
                                   .axpy(1.0, report.control.q.as_piecewise_linear());
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 20; ++trial) {
    const PiecewiseLinear v = random_admissible(grid, problem.bounds, rng);
    const PiecewiseLinear direction = v.axpy(-1.0, report.control.u);
    const double pairing = grad.inner(direction);
    const double scale = std::sqrt(grad.norm_l2_sq()) *
                             std::sqrt(direction.norm_l2_sq()) +
                         1e-30;
    CHECK(pairing >= -1e-8 * scale);
  }

  const double j_opt = evaluate_objective(sys.system(), grid, problem,
                                          options.alpha, report.control.u);
  for (int trial = 0; trial < 5; ++trial) {
    const PiecewiseLinear v = random_admissible(grid, problem.bounds, rng);
    for (double s : {1.0, 0.5, 0.1}) {
      const PiecewiseLinear probe =
          report.control.u.axpy(s, v.axpy(-1.0, report.control.u));
      const double j = evaluate_objective(sys.system(), grid, problem,
                                          options.alpha, probe);
      CHECK(j >= j_opt - 1e-10 * std::max(1.0, std::abs(j_opt)));
    }
  }
}
