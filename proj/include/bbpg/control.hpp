#pragma once

#include <vector>

#include "bbpg/fem.hpp"
#include "bbpg/fields.hpp"
#include "bbpg/piecewise.hpp"

namespace bbpg {

struct BoxBounds {
  double lower = 0.0;
  double upper = 0.0;
};

/// Control recovered pointwise from an adjoint pairing: u = clamp(-q/alpha).
/// The segment representation is exact; breakpoints are the grid nodes plus
/// the closed-form crossings of -q/alpha with the bounds (at most two per
/// interval), so u(t) lies in [lower, upper] by construction.
struct ClampedControl {
  ScalarPL q;
  double alpha = 0.0;
  BoxBounds bounds;
  PiecewiseLinear u;
};

/// B* applied to a discrete adjoint: q_m = (g1, p_m) through the mass matrix.
ScalarPL apply_Bstar(const PLField& p, const SpatialField& g1,
                     const OperatorMatrix& mass);

/// Exact clamp of -q/alpha to [bounds.lower, bounds.upper]. Throws
/// ConfigError for alpha <= 0 (the fixed-point map is undefined there).
ClampedControl project_control(const ScalarPL& q, double alpha,
                               const BoxBounds& bounds);

/// Hat-weighted time integrals of the control, used as state forcing.
std::vector<double> control_forcing_integrals(const ClampedControl& u,
                                              const TimeGrid& grid);

/// sup_t |u(t) - clamp(-q(t)/alpha)| over all breakpoints of both sides.
double optimality_residual(const PiecewiseLinear& u, const ScalarPL& q,
                           double alpha, const BoxBounds& bounds);

}  // namespace bbpg
