#include "bbpg/control.hpp"

#include <algorithm>
#include <cmath>

#include "bbpg/errors.hpp"
#include "bbpg/time_ops.hpp"

namespace bbpg {

ScalarPL apply_Bstar(const PLField& p, const SpatialField& g1,
                     const OperatorMatrix& mass) {
  const std::vector<double> pairing = mass.full.multiply(g1.values);
  ScalarPL q;
  q.grid = p.grid;
  q.node_values.resize(p.node_values.size());
  for (std::size_t m = 0; m < p.node_values.size(); ++m) {
    q.node_values[m] = dot(pairing, p.node_values[m].values);
  }
  return q;
}

ClampedControl project_control(const ScalarPL& q, double alpha,
                               const BoxBounds& bounds) {
  if (!(alpha > 0.0)) {
    throw ConfigError("project_control: alpha must be positive");
  }
  const double a = bounds.lower;
  const double b = bounds.upper;
  const auto clamp = [&](double w) { return std::max(a, std::min(w, b)); };

  const auto& nodes = q.grid.nodes;
  std::vector<double> bp;
  std::vector<double> val;
  bp.reserve(nodes.size());
  val.reserve(nodes.size());

  bp.push_back(nodes.front());
  val.push_back(clamp(-q.node_values.front() / alpha));

  for (std::size_t m = 0; m + 1 < nodes.size(); ++m) {
    const double w0 = -q.node_values[m] / alpha;
    const double w1 = -q.node_values[m + 1] / alpha;
    const double t0 = nodes[m];
    const double t1 = nodes[m + 1];
    if (w1 != w0) {
      // Crossings of the line w(t) with each bound, in increasing order.
      double cross[2];
      int count = 0;
      for (double level : {a, b}) {
        const double tc = t0 + (level - w0) / (w1 - w0) * (t1 - t0);
        if (tc > t0 && tc < t1) cross[count++] = tc;
      }
      if (count == 2 && cross[0] > cross[1]) std::swap(cross[0], cross[1]);
      for (int c = 0; c < count; ++c) {
        const double wc = w0 + (cross[c] - t0) / (t1 - t0) * (w1 - w0);
        bp.push_back(cross[c]);
        val.push_back(clamp(wc));
      }
    }
    bp.push_back(t1);
    val.push_back(clamp(w1));
  }

  // Duplicate times can appear when a crossing coincides with a node.
  std::vector<double> bp2{bp.front()};
  std::vector<double> val2{val.front()};
  for (std::size_t i = 1; i < bp.size(); ++i) {
    if (bp[i] > bp2.back()) {
      bp2.push_back(bp[i]);
      val2.push_back(val[i]);
    }
  }

  ClampedControl control;
  control.q = q;
  control.alpha = alpha;
  control.bounds = bounds;
  control.u = PiecewiseLinear(std::move(bp2), std::move(val2));
  return control;
}

std::vector<double> control_forcing_integrals(const ClampedControl& u,
                                              const TimeGrid& grid) {
  return hat_weights(TimeCoefficient::from_piecewise_linear(u.u), grid);
}

double optimality_residual(const PiecewiseLinear& u, const ScalarPL& q,
                           double alpha, const BoxBounds& bounds) {
  const ClampedControl target = project_control(q, alpha, bounds);
  return u.sup_abs_diff(target.u);
}

}  // namespace bbpg
