#include "bbpg/pcg.hpp"

#include <cmath>
#include <string>

#include "bbpg/errors.hpp"

namespace bbpg {

PcgResult pcg_jacobi(const CsrMatrix& a, std::span<const double> b,
                     const PcgOptions& options) {
  const std::int32_t n = a.n;
  PcgResult result;
  result.x.assign(n, 0.0);

  const double bnorm = std::sqrt(dot(b, b));
  if (bnorm == 0.0) {
    return result;
  }

  const std::vector<double> diag = a.diagonal();
  std::vector<double> r(b.begin(), b.end());
  std::vector<double> z(n), p(n), ap(n);
  for (std::int32_t i = 0; i < n; ++i) z[i] = r[i] / diag[i];
  p = z;
  double rz = dot(r, z);

  const std::int64_t cap =
      options.max_iter > 0 ? options.max_iter : 10 * static_cast<std::int64_t>(n);
  double rnorm = bnorm;
  for (std::int64_t it = 0; it < cap; ++it) {
    if (rnorm <= options.rel_tol * bnorm) {
      result.rel_residual = rnorm / bnorm;
      return result;
    }
    a.multiply(p, ap);
    const double alpha = rz / dot(p, ap);
    for (std::int32_t i = 0; i < n; ++i) {
      result.x[i] += alpha * p[i];
      r[i] -= alpha * ap[i];
    }
    ++result.iterations;
    if (options.on_iterate) options.on_iterate(result.x);
    for (std::int32_t i = 0; i < n; ++i) z[i] = r[i] / diag[i];
    const double rz_next = dot(r, z);
    const double beta = rz_next / rz;
    for (std::int32_t i = 0; i < n; ++i) p[i] = z[i] + beta * p[i];
    rz = rz_next;
    rnorm = std::sqrt(dot(r, r));
  }
  if (rnorm <= options.rel_tol * bnorm) {
    result.rel_residual = rnorm / bnorm;
    return result;
  }
  throw SolverError("pcg_jacobi: iteration cap " + std::to_string(cap) +
                        " reached, relative residual " +
                        std::to_string(rnorm / bnorm),
                    rnorm / bnorm);
}

SpatialField solve_spd(const SpaceMesh& mesh, const OperatorMatrix& mass,
                       const OperatorMatrix& stiffness, double c_mass,
                       double c_stiff, const SpatialField& rhs,
                       const PcgOptions& options) {
  if (!(c_mass > 0.0) || c_stiff < 0.0) {
    throw ConfigError("solve_spd: requires c_mass > 0 and c_stiff >= 0");
  }
  const CsrMatrix a =
      CsrMatrix::combine(mass.interior, c_mass, stiffness.interior, c_stiff);
  const std::vector<double> b = restrict_interior(mesh, rhs);
  const PcgResult res = pcg_jacobi(a, b, options);
  return scatter_interior(mesh, res.x);
}

}  // namespace bbpg
