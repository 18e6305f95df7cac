#pragma once

#include <functional>
#include <vector>

#include "bbpg/mesh.hpp"
#include "bbpg/norms.hpp"
#include "bbpg/sparse.hpp"

namespace bbpg {

/// Nodal coefficients of a P1 function (one value per mesh node).
struct SpatialField {
  std::vector<double> values;

  SpatialField() = default;
  explicit SpatialField(std::size_t n) : values(n, 0.0) {}
  explicit SpatialField(std::vector<double> v) : values(std::move(v)) {}

  std::size_t size() const { return values.size(); }
};

using SpatialFn = std::function<double(double, double)>;

enum class MatrixRole { mass, stiffness, combination };

/// Assembled bilinear form. `full` couples all nodes; `interior` is the
/// Dirichlet-eliminated block used by the solvers.
struct OperatorMatrix {
  MatrixRole role = MatrixRole::combination;
  CsrMatrix full;
  CsrMatrix interior;
};

OperatorMatrix assemble_mass(const SpaceMesh& mesh);
OperatorMatrix assemble_stiffness(const SpaceMesh& mesh);

enum class TargetSpace { full, dirichlet };

/// Nodal interpolation; boundary coefficients are zeroed for the Dirichlet
/// space. Throws DataError when f is not finite at some node.
SpatialField interpolate_nodal(const SpaceMesh& mesh, const SpatialFn& f,
                               TargetSpace target = TargetSpace::full);

/// Component j approximates the integral of f * phi_j (7-point rule per
/// triangle).
SpatialField load_vector(const SpaceMesh& mesh, const SpatialFn& f);

/// L1/L2/Linf of (fe - exact) over the square; the Linf value is the sampled
/// supremum over nodes and quadrature points.
Norms3 spatial_error_norms(const SpaceMesh& mesh, const SpatialField& fe,
                           const SpatialFn& exact);

std::vector<double> restrict_interior(const SpaceMesh& mesh,
                                      const SpatialField& field);
SpatialField scatter_interior(const SpaceMesh& mesh,
                              std::span<const double> interior);

/// Discrete L2(Omega) pairing (a, b) through the full mass matrix.
double mass_inner(const OperatorMatrix& mass, const SpatialField& a,
                  const SpatialField& b);

}  // namespace bbpg
