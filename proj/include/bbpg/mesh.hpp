#pragma once

#include <array>
#include <cstdint>
#include <vector>

namespace bbpg {

/// Uniform triangulation of the unit square at refinement `level`:
/// 2^level cells per side, each cell split along the lower-left to
/// upper-right diagonal into two right triangles. Immutable once built.
struct SpaceMesh {
  int level = 0;
  int cells_per_side = 1;
  double h = 0.0;  // longest edge = sqrt(2) * 2^-level

  std::vector<std::array<double, 2>> node_coords;
  std::vector<std::array<std::int32_t, 3>> triangles;
  std::vector<char> boundary_mask;

  // interior_index[node] is the compact index among non-boundary nodes,
  // or -1 for boundary nodes.
  std::vector<std::int32_t> interior_index;
  std::vector<std::int32_t> interior_nodes;

  int nodes_per_side() const { return cells_per_side + 1; }
  std::size_t node_count() const { return node_coords.size(); }
  std::size_t triangle_count() const { return triangles.size(); }
  std::size_t interior_count() const { return interior_nodes.size(); }
  double triangle_area() const;

  std::int32_t node_id(int i, int j) const {
    return static_cast<std::int32_t>(j) * nodes_per_side() + i;
  }
};

/// Builds the structured mesh. Throws ConfigError for level outside [0, 12].
SpaceMesh build_uniform_mesh(int level);

}  // namespace bbpg
