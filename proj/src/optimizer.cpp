#include "bbpg/optimizer.hpp"

#include <cmath>
#include <string>
#include <utility>

#include "bbpg/errors.hpp"
#include "bbpg/quadrature.hpp"

namespace bbpg {

namespace {

// Quadrature integral of a pointwise function over the square.
double quad_integral(const SpaceMesh& mesh, const SpatialFn& f) {
  double sum = 0.0;
  for (double v : load_vector(mesh, f).values) sum += v;
  return sum;
}

// (G_i, G_j) for any combination of discrete and pointwise profiles.
double profile_inner(const HeatSystem& sys, const SeparableForcing::Term& a,
                     const SeparableForcing::Term& b) {
  const auto* fa = std::get_if<SpatialField>(&a.profile);
  const auto* fb = std::get_if<SpatialField>(&b.profile);
  if (fa && fb) return mass_inner(*sys.mass, *fa, *fb);
  if (fa) return dot(load_vector(*sys.mesh, std::get<SpatialFn>(b.profile)).values,
                     fa->values);
  if (fb) return dot(load_vector(*sys.mesh, std::get<SpatialFn>(a.profile)).values,
                     fb->values);
  const auto& ga = std::get<SpatialFn>(a.profile);
  const auto& gb = std::get<SpatialFn>(b.profile);
  return quad_integral(*sys.mesh,
                       [&](double x, double y) { return ga(x, y) * gb(x, y); });
}

SeparableForcing negated(const SeparableForcing& forcing) {
  SeparableForcing out;
  for (const auto& term : forcing.terms) {
    TimeCoefficient c = term.coeff;
    auto base = c.fn;
    c.fn = [base](double t) { return -base(t); };
    out.terms.push_back({std::move(c), term.profile});
  }
  return out;
}

}  // namespace

SeparableForcing forcing_with_control(const ControlProblem& problem,
                                      const PiecewiseLinear& u) {
  SeparableForcing forcing = problem.base_forcing;
  forcing.add(TimeCoefficient::from_piecewise_linear(u),
              problem.control_profile);
  return forcing;
}

double objective(const HeatSystem& sys, const TimeGrid& grid,
                 const ControlProblem& problem, double alpha,
                 const PiecewiseLinear& u, const PCField& state) {
  const int steps = grid.intervals();
  const auto& yd = problem.desired_state;

  double tracking = 0.0;

  // |y_kh|^2 part: exact, the state is constant on each interval.
  for (int m = 0; m < steps; ++m) {
    tracking += grid.dt(m) * mass_inner(*sys.mass, state.interval_values[m],
                                        state.interval_values[m]);
  }

  // Cross terms -2 (y_kh, y_d): same interval quadrature as the adjoint loads.
  for (const auto& term : yd.terms) {
    const std::vector<double> pair = pairing_vector(sys, term);
    const std::vector<double> ints = interval_integrals(term.coeff, grid);
    for (int m = 0; m < steps; ++m) {
      tracking -= 2.0 * ints[m] * dot(pair, state.interval_values[m].values);
    }
  }

  // |y_d|^2 part (control independent).
  for (std::size_t i = 0; i < yd.terms.size(); ++i) {
    for (std::size_t j = 0; j < yd.terms.size(); ++j) {
      const auto& ti = yd.terms[i];
      const auto& tj = yd.terms[j];
      TimeCoefficient prod;
      prod.fn = [fi = ti.coeff.fn, fj = tj.coeff.fn](double t) {
        return fi(t) * fj(t);
      };
      prod.breakpoints =
          merge_breakpoints(ti.coeff.breakpoints, tj.coeff.breakpoints);
      double tsum = 0.0;
      for (double v : interval_integrals(prod, grid)) tsum += v;
      tracking += tsum * profile_inner(sys, ti, tj);
    }
  }

  return 0.5 * tracking + 0.5 * alpha * u.norm_l2_sq();
}

double evaluate_objective(const HeatSystem& sys, const TimeGrid& grid,
                          const ControlProblem& problem, double alpha,
                          const PiecewiseLinear& u) {
  const PCField state =
      solve_state(sys, grid, forcing_with_control(problem, u), problem.initial_value);
  return objective(sys, grid, problem, alpha, u, state);
}

SolveReport fixed_point_solve(const HeatSystem& sys, const TimeGrid& grid,
                              const ControlProblem& problem,
                              const FixedPointOptions& options) {
  if (!(options.alpha > 0.0)) {
    throw ConfigError("fixed_point_solve: alpha must be positive");
  }
  if (!(options.threshold > 0.0)) {
    throw ConfigError("fixed_point_solve: threshold must be positive");
  }

  const AdjointRhs make_rhs{nullptr, negated(problem.desired_state)};

  PiecewiseLinear u = PiecewiseLinear::constant(0.0, grid.horizon,
                                                problem.bounds.lower);
  std::vector<double> history;
  ScalarPL previous_q;

  for (int sweep = 1; sweep <= options.max_iter; ++sweep) {
    PCField state = solve_state(sys, grid, forcing_with_control(problem, u),
                                problem.initial_value);
    AdjointRhs rhs = make_rhs;
    rhs.pc = &state;
    PLField adjoint = solve_adjoint(sys, grid, rhs);
    ScalarPL q = apply_Bstar(adjoint, problem.control_profile, *sys.mass);
    ClampedControl next = project_control(q, options.alpha, problem.bounds);

    const double residual = (sweep == 1)
                                ? next.u.sup_abs_diff(u)
                                : scalar_pl_sup_norm(q - previous_q);
    history.push_back(residual);

    if (residual < options.threshold) {
      SolveReport report;
      report.control = std::move(next);
      report.iterations = sweep;
      report.residual_history = std::move(history);
      report.objective_value =
          objective(sys, grid, problem, options.alpha, report.control.u, state);
      report.state = std::move(state);
      report.adjoint = std::move(adjoint);
      return report;
    }

    u = next.u;
    previous_q = std::move(q);
  }

  throw NonConvergenceError(
      "fixed_point_solve: no convergence within " +
          std::to_string(options.max_iter) + " sweeps (last residual " +
          std::to_string(history.back()) + ")",
      history);
}

}  // namespace bbpg
