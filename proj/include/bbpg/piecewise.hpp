#pragma once

#include <vector>

namespace bbpg {

/// Continuous piecewise-linear scalar function on [t.front(), t.back()],
/// stored as strictly increasing breakpoints with values. Controls, clamp
/// projections and fixed-point residuals all live in this representation, so
/// inner products and suprema are exact.
struct PiecewiseLinear {
  std::vector<double> t;
  std::vector<double> v;

  PiecewiseLinear() = default;
  PiecewiseLinear(std::vector<double> times, std::vector<double> values);

  static PiecewiseLinear constant(double t0, double t1, double value);

  double start() const { return t.front(); }
  double end() const { return t.back(); }

  double operator()(double time) const;

  /// max over breakpoints of |v| (piecewise-linear extrema sit on nodes).
  double sup_abs() const;

  /// Exact sup of |this - other| (evaluated on merged breakpoints).
  double sup_abs_diff(const PiecewiseLinear& other) const;

  /// this + scale * other on the merged breakpoint set.
  PiecewiseLinear axpy(double scale, const PiecewiseLinear& other) const;

  PiecewiseLinear scaled(double factor) const;

  /// Exact integral of this * other (Simpson per merged segment).
  double inner(const PiecewiseLinear& other) const;

  double integral() const;
  double norm_l2_sq() const { return inner(*this); }
};

/// Merged, deduplicated breakpoints of two functions on the same domain.
std::vector<double> merge_breakpoints(const std::vector<double>& a,
                                      const std::vector<double>& b);

/// Piecewise-constant function that jumps at interior switch times; used for
/// exact bang-bang reference controls.
struct PiecewiseConstant {
  double t0 = 0.0;
  double t1 = 0.0;
  std::vector<double> switches;  // strictly increasing, inside (t0, t1)
  std::vector<double> values;    // size switches.size() + 1

  double operator()(double time) const;
};

}  // namespace bbpg
