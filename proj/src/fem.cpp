#include "bbpg/fem.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "bbpg/errors.hpp"
#include "bbpg/quadrature.hpp"

namespace bbpg {

namespace {

// Shared node-connectivity pattern so mass and stiffness can be combined
// entry-wise later.
CsrMatrix empty_pattern(const SpaceMesh& mesh) {
  const std::int32_t n = static_cast<std::int32_t>(mesh.node_count());
  std::vector<std::vector<std::int32_t>> adj(n);
  for (const auto& tri : mesh.triangles) {
    for (int a = 0; a < 3; ++a) {
      for (int b = 0; b < 3; ++b) {
        adj[tri[a]].push_back(tri[b]);
      }
    }
  }
  CsrMatrix m;
  m.n = n;
  m.row_ptr.assign(n + 1, 0);
  for (std::int32_t i = 0; i < n; ++i) {
    auto& row = adj[i];
    std::sort(row.begin(), row.end());
    row.erase(std::unique(row.begin(), row.end()), row.end());
    m.row_ptr[i + 1] = m.row_ptr[i] + static_cast<std::int64_t>(row.size());
  }
  m.col.reserve(m.row_ptr[n]);
  for (std::int32_t i = 0; i < n; ++i) {
    m.col.insert(m.col.end(), adj[i].begin(), adj[i].end());
  }
  m.val.assign(m.col.size(), 0.0);
  return m;
}

void add_entry(CsrMatrix& m, std::int32_t i, std::int32_t j, double v) {
  const auto begin = m.col.begin() + m.row_ptr[i];
  const auto end = m.col.begin() + m.row_ptr[i + 1];
  const auto it = std::lower_bound(begin, end, j);
  m.val[it - m.col.begin()] += v;
}

CsrMatrix restrict_matrix(const SpaceMesh& mesh, const CsrMatrix& full) {
  CsrMatrix m;
  m.n = static_cast<std::int32_t>(mesh.interior_count());
  m.row_ptr.assign(m.n + 1, 0);
  for (std::int32_t r = 0; r < m.n; ++r) {
    const std::int32_t node = mesh.interior_nodes[r];
    std::int64_t count = 0;
    for (std::int64_t k = full.row_ptr[node]; k < full.row_ptr[node + 1]; ++k) {
      if (mesh.interior_index[full.col[k]] >= 0) ++count;
    }
    m.row_ptr[r + 1] = m.row_ptr[r] + count;
  }
  m.col.reserve(m.row_ptr[m.n]);
  m.val.reserve(m.row_ptr[m.n]);
  for (std::int32_t r = 0; r < m.n; ++r) {
    const std::int32_t node = mesh.interior_nodes[r];
    for (std::int64_t k = full.row_ptr[node]; k < full.row_ptr[node + 1]; ++k) {
      const std::int32_t cj = mesh.interior_index[full.col[k]];
      if (cj >= 0) {
        m.col.push_back(cj);
        m.val.push_back(full.val[k]);
      }
    }
  }
  return m;
}

}  // namespace

OperatorMatrix assemble_mass(const SpaceMesh& mesh) {
  OperatorMatrix out;
  out.role = MatrixRole::mass;
  out.full = empty_pattern(mesh);
  const double area = mesh.triangle_area();
  // Exact P1 element mass matrix: area/12 * [[2,1,1],[1,2,1],[1,1,2]].
  for (const auto& tri : mesh.triangles) {
    for (int a = 0; a < 3; ++a) {
      for (int b = 0; b < 3; ++b) {
        const double v = (a == b ? 2.0 : 1.0) * area / 12.0;
        add_entry(out.full, tri[a], tri[b], v);
      }
    }
  }
  out.interior = restrict_matrix(mesh, out.full);
  return out;
}

OperatorMatrix assemble_stiffness(const SpaceMesh& mesh) {
  OperatorMatrix out;
  out.role = MatrixRole::stiffness;
  out.full = empty_pattern(mesh);
  for (const auto& tri : mesh.triangles) {
    const auto& p0 = mesh.node_coords[tri[0]];
    const auto& p1 = mesh.node_coords[tri[1]];
    const auto& p2 = mesh.node_coords[tri[2]];
    const double det = (p1[0] - p0[0]) * (p2[1] - p0[1]) -
                       (p2[0] - p0[0]) * (p1[1] - p0[1]);
    const double area = 0.5 * std::abs(det);
    // Barycentric gradients: grad(lambda_a) = rot(edge opposite a) / det.
    const double gx[3] = {(p1[1] - p2[1]) / det, (p2[1] - p0[1]) / det,
                          (p0[1] - p1[1]) / det};
    const double gy[3] = {(p2[0] - p1[0]) / det, (p0[0] - p2[0]) / det,
                          (p1[0] - p0[0]) / det};
    for (int a = 0; a < 3; ++a) {
      for (int b = 0; b < 3; ++b) {
        add_entry(out.full, tri[a], tri[b],
                  area * (gx[a] * gx[b] + gy[a] * gy[b]));
      }
    }
  }
  out.interior = restrict_matrix(mesh, out.full);
  return out;
}

SpatialField interpolate_nodal(const SpaceMesh& mesh, const SpatialFn& f,
                               TargetSpace target) {
  SpatialField field(mesh.node_count());
  for (std::size_t v = 0; v < mesh.node_count(); ++v) {
    const double value = f(mesh.node_coords[v][0], mesh.node_coords[v][1]);
    if (!std::isfinite(value)) {
      throw DataError("interpolate_nodal: non-finite value at node " +
                      std::to_string(v));
    }
    field.values[v] =
        (target == TargetSpace::dirichlet && mesh.boundary_mask[v]) ? 0.0
                                                                    : value;
  }
  return field;
}

SpatialField load_vector(const SpaceMesh& mesh, const SpatialFn& f) {
  SpatialField out(mesh.node_count());
  const auto& pts = TriangleRule7::points();
  const auto& wts = TriangleRule7::weights();
  const double area = mesh.triangle_area();
  for (const auto& tri : mesh.triangles) {
    const auto& p0 = mesh.node_coords[tri[0]];
    const auto& p1 = mesh.node_coords[tri[1]];
    const auto& p2 = mesh.node_coords[tri[2]];
    for (int q = 0; q < TriangleRule7::size; ++q) {
      const auto& l = pts[q];
      const double x = l[0] * p0[0] + l[1] * p1[0] + l[2] * p2[0];
      const double y = l[0] * p0[1] + l[1] * p1[1] + l[2] * p2[1];
      const double fw = f(x, y) * wts[q] * area;
      for (int a = 0; a < 3; ++a) {
        out.values[tri[a]] += fw * l[a];
      }
    }
  }
  return out;
}

Norms3 spatial_error_norms(const SpaceMesh& mesh, const SpatialField& fe,
                           const SpatialFn& exact) {
  const auto& pts = TriangleRule7::points();
  const auto& wts = TriangleRule7::weights();
  const double area = mesh.triangle_area();
  Norms3 norms;
  double l2sq = 0.0;
  for (const auto& tri : mesh.triangles) {
    const auto& p0 = mesh.node_coords[tri[0]];
    const auto& p1 = mesh.node_coords[tri[1]];
    const auto& p2 = mesh.node_coords[tri[2]];
    const double v0 = fe.values[tri[0]];
    const double v1 = fe.values[tri[1]];
    const double v2 = fe.values[tri[2]];
    for (int q = 0; q < TriangleRule7::size; ++q) {
      const auto& l = pts[q];
      const double x = l[0] * p0[0] + l[1] * p1[0] + l[2] * p2[0];
      const double y = l[0] * p0[1] + l[1] * p1[1] + l[2] * p2[1];
      const double diff = l[0] * v0 + l[1] * v1 + l[2] * v2 - exact(x, y);
      const double w = wts[q] * area;
      norms.l1 += w * std::abs(diff);
      l2sq += w * diff * diff;
      norms.linf = std::max(norms.linf, std::abs(diff));
    }
  }
  for (std::size_t v = 0; v < mesh.node_count(); ++v) {
    const double diff =
        fe.values[v] - exact(mesh.node_coords[v][0], mesh.node_coords[v][1]);
    norms.linf = std::max(norms.linf, std::abs(diff));
  }
  norms.l2 = std::sqrt(l2sq);
  return norms;
}

std::vector<double> restrict_interior(const SpaceMesh& mesh,
                                      const SpatialField& field) {
  std::vector<double> out(mesh.interior_count());
  for (std::size_t r = 0; r < out.size(); ++r) {
    out[r] = field.values[mesh.interior_nodes[r]];
  }
  return out;
}

SpatialField scatter_interior(const SpaceMesh& mesh,
                              std::span<const double> interior) {
  SpatialField field(mesh.node_count());
  for (std::size_t r = 0; r < interior.size(); ++r) {
    field.values[mesh.interior_nodes[r]] = interior[r];
  }
  return field;
}

double mass_inner(const OperatorMatrix& mass, const SpatialField& a,
                  const SpatialField& b) {
  return dot(mass.full.multiply(a.values), b.values);
}

}  // namespace bbpg
