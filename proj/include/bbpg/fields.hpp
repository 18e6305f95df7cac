#pragma once

#include <optional>
#include <vector>

#include "bbpg/fem.hpp"
#include "bbpg/piecewise.hpp"
#include "bbpg/time_grid.hpp"

namespace bbpg {

/// Space-time field that is piecewise constant in time (the state space):
/// one spatial field per primal interval plus the separate terminal dof.
struct PCField {
  TimeGrid grid;
  std::vector<SpatialField> interval_values;  // size M
  std::optional<SpatialField> terminal_value;

  const SpatialField& at_interval(int m) const { return interval_values[m]; }
};

/// Space-time field that is continuous piecewise linear in time (the adjoint
/// space): one spatial field per primal node, linear interpolation between.
struct PLField {
  TimeGrid grid;
  std::vector<SpatialField> node_values;  // size M+1
};

/// Scalar continuous piecewise-linear function on the primal grid.
struct ScalarPL {
  TimeGrid grid;
  std::vector<double> node_values;  // size M+1

  PiecewiseLinear as_piecewise_linear() const {
    return PiecewiseLinear(grid.nodes, node_values);
  }
};

ScalarPL operator-(const ScalarPL& a, const ScalarPL& b);

/// Exact sup norm over [0, T]; attained at a node.
double scalar_pl_sup_norm(const ScalarPL& q);

/// Piecewise-linear reconstruction of PC interval values on the dual grid:
/// interpolates between (t*_m, v_m) for interior dual intervals and extends
/// the first and last chords to t=0 and t=T. Requires M >= 3.
class DualInterpolant {
 public:
  explicit DualInterpolant(const TimeGrid& grid);

  struct Blend {
    int left;   // interval index, 0-based
    int right;  // interval index, 0-based
    double theta;
  };

  /// Blend weights so that value(t) = lerp(v[left], v[right], theta);
  /// theta may leave [0,1] on the extrapolated end segments.
  Blend blend_at(double t) const;

  double eval(const std::vector<double>& interval_values, double t) const;

 private:
  const TimeGrid* grid_;
};

/// Convenience wrapper evaluating a PCField through the dual interpolant.
class DualPcField {
 public:
  explicit DualPcField(const PCField& field)
      : field_(&field), interp_(field.grid) {}

  SpatialField eval(double t) const;
  const DualInterpolant& interpolant() const { return interp_; }
  const PCField& base() const { return *field_; }

 private:
  const PCField* field_;
  DualInterpolant interp_;
};

}  // namespace bbpg
