#include "bbpg/fields.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>

#include "bbpg/errors.hpp"

namespace bbpg {

ScalarPL operator-(const ScalarPL& a, const ScalarPL& b) {
  assert(a.node_values.size() == b.node_values.size());
  ScalarPL out = a;
  for (std::size_t m = 0; m < out.node_values.size(); ++m) {
    out.node_values[m] -= b.node_values[m];
  }
  return out;
}

double scalar_pl_sup_norm(const ScalarPL& q) {
  double m = 0.0;
  for (double x : q.node_values) m = std::max(m, std::abs(x));
  return m;
}

DualInterpolant::DualInterpolant(const TimeGrid& grid) : grid_(&grid) {
  if (grid.intervals() < 3) {
    throw ConfigError("dual-grid interpolation requires at least 3 intervals");
  }
}

DualInterpolant::Blend DualInterpolant::blend_at(double t) const {
  const int m_count = grid_->intervals();
  const auto& dual = grid_->dual_nodes;  // dual[m] = t*_m, m = 0..M+1

  // Chord between t*_j and t*_{j+1} carries interval values j-1 and j
  // (0-based); the first and last chords extend to the domain ends.
  int j;  // 1-based left dual node of the chord
  if (t <= dual[2]) {
    j = 1;
  } else if (t >= dual[m_count - 1]) {
    j = m_count - 1;
  } else {
    const auto it = std::upper_bound(dual.begin() + 2, dual.begin() + m_count, t);
    j = static_cast<int>(it - dual.begin()) - 1;
  }
  const double left = dual[j];
  const double right = dual[j + 1];
  return Blend{j - 1, j, (t - left) / (right - left)};
}

double DualInterpolant::eval(const std::vector<double>& interval_values,
                             double t) const {
  const Blend b = blend_at(t);
  return interval_values[b.left] +
         b.theta * (interval_values[b.right] - interval_values[b.left]);
}

SpatialField DualPcField::eval(double t) const {
  const auto b = interp_.blend_at(t);
  const auto& lv = field_->interval_values[b.left].values;
  const auto& rv = field_->interval_values[b.right].values;
  SpatialField out(lv.size());
  for (std::size_t i = 0; i < lv.size(); ++i) {
    out.values[i] = lv[i] + b.theta * (rv[i] - lv[i]);
  }
  return out;
}

}  // namespace bbpg
