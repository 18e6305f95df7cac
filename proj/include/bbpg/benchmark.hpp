#pragma once

#include <vector>

#include "bbpg/optimizer.hpp"

namespace bbpg {

/// Manufactured bang-bang benchmark on (0,1)^2 x (0, 0.5):
///   g1(x)    = sin(pi x1) sin(pi x2)
///   pbar     = -(T/(2 pi a)) sin(2 pi a t / T) g1     (exact adjoint)
///   ybar     = cos(2 pi a t / T) g1                   (exact state)
///   y_d      = (pi T / a) sin(2 pi a t / T) g1
///   y0       = g1
///   ubar     = upper bound where (g1, pbar) < 0, lower bound where > 0;
///              switches at the zeros t = j T/(2a), j = 1..2a-1
///   c0(t)    = 2 pi (-(a/T) sin(2 pi a t/T) + pi cos(2 pi a t/T)) - ubar(t)
/// so that dy/dt - Lap y = (c0 + u) g1 is optimal exactly at ubar.
struct BenchmarkProblem {
  double horizon = 0.5;
  double frequency = 2.0;  // the constant a; controls the switch count
  BoxBounds bounds{0.2, 0.4};

  static double g1(double x1, double x2);

  double phase(double t) const;                // 2 pi a t / T
  double adjoint_coeff(double t) const;        // pbar = coeff * g1
  double state_coeff(double t) const;          // ybar = coeff * g1
  double desired_coeff(double t) const;        // y_d = coeff * g1
  double bstar_adjoint_exact(double t) const;  // (g1, pbar(t)) = coeff / 4
  double forcing_coeff(double t) const;        // c0(t), jumps at the switches

  std::vector<double> switch_times() const;    // {1/8, 1/4, 3/8} for a=2
  PiecewiseConstant exact_control() const;

  /// Discrete problem data on a mesh: nodal g1, y0 = g1, the c0 * g1 base
  /// forcing split at the control switches, and y_d as a separable term.
  ControlProblem make_problem(const SpaceMesh& mesh) const;
};

/// Coupled study parameters: alpha = 2^(-2 level) and
/// M = round(2^(3 level / 2 + 1)) time steps.
double study_alpha(int level);
int study_time_steps(int level);

}  // namespace bbpg
