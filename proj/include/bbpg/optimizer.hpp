#pragma once

#include <vector>

#include "bbpg/control.hpp"
#include "bbpg/heat.hpp"

namespace bbpg {

/// Data of the regularized tracking problem with a located control:
/// state equation dy/dt - Lap y = base + u(t) * control_profile, y(0) = y0,
/// objective 1/2 |y - y_d|^2 + alpha/2 |u|^2, bounds on u.
struct ControlProblem {
  SeparableForcing base_forcing;
  SpatialField control_profile;
  SpatialField initial_value;
  SeparableForcing desired_state;
  BoxBounds bounds;
};

struct FixedPointOptions {
  double alpha = 0.0;
  double threshold = 1e-5;  // stopping threshold t0
  int max_iter = 500;
};

/// Converged solve. `control` is the clamp of the final adjoint, so the pair
/// (control, adjoint) satisfies the projection optimality condition exactly;
/// `state` is the state computed in the final sweep.
struct SolveReport {
  ClampedControl control;
  PCField state;
  PLField adjoint;
  int iterations = 0;
  std::vector<double> residual_history;
  double objective_value = 0.0;
};

/// Tracking objective for a given control and its discrete state. The
/// y_d cross terms use the same interval quadrature as the adjoint loads,
/// which makes the quadratic objective and the adjoint gradient consistent
/// to solver accuracy.
double objective(const HeatSystem& sys, const TimeGrid& grid,
                 const ControlProblem& problem, double alpha,
                 const PiecewiseLinear& u, const PCField& state);

/// Objective at an arbitrary admissible (or inadmissible) control, including
/// the state solve.
double evaluate_objective(const HeatSystem& sys, const TimeGrid& grid,
                          const ControlProblem& problem, double alpha,
                          const PiecewiseLinear& u);

/// State forcing for a given control: base_forcing plus u * control_profile.
SeparableForcing forcing_with_control(const ControlProblem& problem,
                                      const PiecewiseLinear& u);

/// Plain fixed-point iteration on u = clamp(-B* p(u)/alpha), started at the
/// lower bound. Sweep i solves state and adjoint for the current iterate;
/// from the second sweep on, convergence is declared when the sup norm of
/// B*(p_i - p_{i-1}) drops below the threshold (after the first sweep, when
/// the control update itself is already below it). Throws
/// NonConvergenceError with the residual history when max_iter is exhausted.
SolveReport fixed_point_solve(const HeatSystem& sys, const TimeGrid& grid,
                              const ControlProblem& problem,
                              const FixedPointOptions& options);

}  // namespace bbpg
