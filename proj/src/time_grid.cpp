#include "bbpg/time_grid.hpp"

#include <algorithm>
#include <string>

#include "bbpg/errors.hpp"

namespace bbpg {

double TimeGrid::max_dt() const {
  double k = 0.0;
  for (int m = 0; m < intervals(); ++m) k = std::max(k, dt(m));
  return k;
}

int TimeGrid::interval_of(double t) const {
  const auto it = std::upper_bound(nodes.begin(), nodes.end(), t);
  int m = static_cast<int>(it - nodes.begin()) - 1;
  return std::clamp(m, 0, intervals() - 1);
}

std::pair<double, double> TimeGrid::neighbor_ratio_bounds() const {
  double lo = 1.0, hi = 1.0;
  for (int m = 0; m + 1 < intervals(); ++m) {
    const double r = dt(m) / dt(m + 1);
    lo = std::min(lo, r);
    hi = std::max(hi, r);
  }
  return {lo, hi};
}

TimeGrid make_time_grid(std::vector<double> nodes) {
  if (nodes.size() < 2) {
    throw ConfigError("time grid needs at least 1 interval");
  }
  for (std::size_t m = 0; m + 1 < nodes.size(); ++m) {
    if (!(nodes[m] < nodes[m + 1])) {
      throw ConfigError("time grid nodes must increase strictly");
    }
  }
  TimeGrid grid;
  grid.horizon = nodes.back();
  grid.nodes = std::move(nodes);
  grid.dual_nodes.resize(grid.nodes.size() + 1);
  grid.dual_nodes.front() = 0.0;
  for (int m = 0; m < grid.intervals(); ++m) {
    grid.dual_nodes[m + 1] = 0.5 * (grid.nodes[m] + grid.nodes[m + 1]);
  }
  grid.dual_nodes.back() = grid.horizon;
  return grid;
}

TimeGrid build_time_grid(int steps, double horizon) {
  if (steps < 2) {
    throw ConfigError("build_time_grid: M = " + std::to_string(steps) +
                      " but at least 2 steps are required");
  }
  if (!(horizon > 0.0)) {
    throw ConfigError("build_time_grid: horizon must be positive");
  }
  std::vector<double> nodes(steps + 1);
  for (int m = 0; m <= steps; ++m) {
    nodes[m] = horizon * static_cast<double>(m) / steps;
  }
  nodes[steps] = horizon;
  return make_time_grid(std::move(nodes));
}

}  // namespace bbpg
