#pragma once

#include <functional>
#include <span>
#include <vector>

#include "bbpg/fem.hpp"
#include "bbpg/sparse.hpp"

namespace bbpg {

struct PcgOptions {
  double rel_tol = 1e-12;
  // Cap defaults to 10*n when <= 0.
  std::int64_t max_iter = 0;
  // Invoked with the iterate after each update; used by tests to watch the
  // energy-norm decay.
  std::function<void(std::span<const double>)> on_iterate;
};

struct PcgResult {
  std::vector<double> x;
  std::int64_t iterations = 0;
  double rel_residual = 0.0;
};

/// Conjugate gradients with Jacobi preconditioning, started from zero.
/// Throws SolverError (carrying the final relative residual) if the cap is
/// reached.
PcgResult pcg_jacobi(const CsrMatrix& a, std::span<const double> b,
                     const PcgOptions& options = {});

/// Solves (c_mass*M + c_stiff*K) x = rhs on the interior dofs and scatters
/// the result back to a nodal field. `rhs` is a dual (load) vector over all
/// nodes. Requires c_mass > 0 and c_stiff >= 0.
SpatialField solve_spd(const SpaceMesh& mesh, const OperatorMatrix& mass,
                       const OperatorMatrix& stiffness, double c_mass,
                       double c_stiff, const SpatialField& rhs,
                       const PcgOptions& options = {});

}  // namespace bbpg
