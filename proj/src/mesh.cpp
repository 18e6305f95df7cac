#include "bbpg/mesh.hpp"

#include <cmath>
#include <string>

#include "bbpg/errors.hpp"

namespace bbpg {

double SpaceMesh::triangle_area() const {
  const double cell = 1.0 / cells_per_side;
  return 0.5 * cell * cell;
}

SpaceMesh build_uniform_mesh(int level) {
  if (level < 0 || level > 12) {
    throw ConfigError("mesh level " + std::to_string(level) +
                      " outside the supported range [0, 12]");
  }

  SpaceMesh mesh;
  mesh.level = level;
  mesh.cells_per_side = 1 << level;
  mesh.h = std::sqrt(2.0) / mesh.cells_per_side;

  const int n = mesh.cells_per_side;
  const int np = n + 1;
  mesh.node_coords.resize(static_cast<std::size_t>(np) * np);
  mesh.boundary_mask.resize(mesh.node_coords.size());
  for (int j = 0; j < np; ++j) {
    for (int i = 0; i < np; ++i) {
      const std::int32_t id = mesh.node_id(i, j);
      mesh.node_coords[id] = {static_cast<double>(i) / n,
                              static_cast<double>(j) / n};
      mesh.boundary_mask[id] = (i == 0 || i == n || j == 0 || j == n) ? 1 : 0;
    }
  }

  mesh.triangles.reserve(2 * static_cast<std::size_t>(n) * n);
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      const std::int32_t a = mesh.node_id(i, j);
      const std::int32_t b = mesh.node_id(i + 1, j);
      const std::int32_t c = mesh.node_id(i + 1, j + 1);
      const std::int32_t d = mesh.node_id(i, j + 1);
      mesh.triangles.push_back({a, b, c});
      mesh.triangles.push_back({a, c, d});
    }
  }

  mesh.interior_index.assign(mesh.node_coords.size(), -1);
  for (std::size_t v = 0; v < mesh.node_coords.size(); ++v) {
    if (!mesh.boundary_mask[v]) {
      mesh.interior_index[v] = static_cast<std::int32_t>(mesh.interior_nodes.size());
      mesh.interior_nodes.push_back(static_cast<std::int32_t>(v));
    }
  }

  return mesh;
}

}  // namespace bbpg
