#pragma once

#include <utility>
#include <vector>

namespace bbpg {

/// Primal time partition 0 = t_0 < ... < t_M = T together with the dual
/// partition 0 = t*_0 < t*_1 < ... < t*_M < t*_{M+1} = T built from interval
/// midpoints. Immutable.
struct TimeGrid {
  double horizon = 0.0;
  std::vector<double> nodes;       // size M+1
  std::vector<double> dual_nodes;  // size M+2

  int intervals() const { return static_cast<int>(nodes.size()) - 1; }
  double dt(int m) const { return nodes[m + 1] - nodes[m]; }  // k_{m+1}
  double max_dt() const;

  /// Index m in [0, M-1] with t in [t_m, t_{m+1}); the last interval is
  /// closed at T.
  int interval_of(double t) const;

  /// (min, max) of k_m / k_{m+1}; the uniform grid reports (1, 1).
  std::pair<double, double> neighbor_ratio_bounds() const;
};

/// Uniform grid with M >= 2 steps on [0, T].
TimeGrid build_time_grid(int steps, double horizon);

/// General (possibly non-uniform) grid from strictly increasing nodes
/// spanning [0, T].
TimeGrid make_time_grid(std::vector<double> nodes);

}  // namespace bbpg
