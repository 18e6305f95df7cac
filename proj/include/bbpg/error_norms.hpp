#pragma once

#include <functional>

#include "bbpg/fields.hpp"
#include "bbpg/norms.hpp"
#include "bbpg/piecewise.hpp"

namespace bbpg {

/// Exact reference of the form c(t) * g(x1, x2); every analytic field in the
/// benchmark is of this shape. `time_breakpoints` lists kinks of c so that
/// the time quadrature can split there.
struct SeparableExact {
  std::function<double(double)> time_coeff;
  SpatialFn space;
  std::vector<double> time_breakpoints;
};

using SpaceTimeFn = std::function<double(double, double, double)>;  // (t,x1,x2)

/// L^p(I, L^p(Omega)) error norms, p in {1, 2, inf}, of a piecewise-constant
/// in time field against a reference; 5-point Gauss per primal interval in
/// time, the 7-point triangle rule in space, Linf as the sampled supremum
/// over interval endpoints, Gauss times, nodes and quadrature points.
Norms3 field_error_norms(const SpaceMesh& mesh, const PCField& field,
                         const SeparableExact& exact);
Norms3 field_error_norms(const SpaceMesh& mesh, const PCField& field,
                         const SpaceTimeFn& exact);

/// Same for a continuous piecewise-linear in time field.
Norms3 field_error_norms(const SpaceMesh& mesh, const PLField& field,
                         const SeparableExact& exact);
Norms3 field_error_norms(const SpaceMesh& mesh, const PLField& field,
                         const SpaceTimeFn& exact);

/// Norms of the dual-grid interpolant of a PC field (the projected state);
/// integration runs chord by chord so the interpolant is smooth on every
/// quadrature piece.
Norms3 field_error_norms_dual(const SpaceMesh& mesh, const PCField& field,
                              const SeparableExact& exact);
Norms3 field_error_norms_dual(const SpaceMesh& mesh, const PCField& field,
                              const SpaceTimeFn& exact);

/// Exact norms of u - ubar for a piecewise-linear control against a
/// piecewise-constant reference: pieces are merged, split at sign changes,
/// and integrated in closed form.
Norms3 control_error_norms(const PiecewiseLinear& u,
                           const PiecewiseConstant& exact);

}  // namespace bbpg
