#pragma once

#include <functional>
#include <vector>

#include "bbpg/piecewise.hpp"
#include "bbpg/time_grid.hpp"

namespace bbpg {

/// Scalar time coefficient with declared breakpoints (kinks or jumps); all
/// quadrature splits at the breakpoints, so piecewise-polynomial coefficients
/// of degree <= 2 integrate exactly under the 5-point Gauss rule.
struct TimeCoefficient {
  std::function<double(double)> fn;
  std::vector<double> breakpoints;  // sorted, inside (0, T)

  double operator()(double t) const { return fn(t); }

  static TimeCoefficient smooth(std::function<double(double)> f) {
    return TimeCoefficient{std::move(f), {}};
  }
  static TimeCoefficient from_piecewise_linear(const PiecewiseLinear& pl);
  static TimeCoefficient from_piecewise_constant(const PiecewiseConstant& pc);
};

/// Interval averages (1/k_m) * integral of f over I_m for m = 1..M.
std::vector<double> project_Yk(const TimeCoefficient& f, const TimeGrid& grid);

/// Integrals of f over each primal interval.
std::vector<double> interval_integrals(const TimeCoefficient& f,
                                       const TimeGrid& grid);

/// Integrals of f times the nodal hat function v_m over its support, for
/// m = 0..M: the descending hat on I_1, the interior hats on I_m and I_{m+1},
/// and the ascending terminal hat on I_M.
std::vector<double> hat_weights(const TimeCoefficient& f, const TimeGrid& grid);

}  // namespace bbpg
