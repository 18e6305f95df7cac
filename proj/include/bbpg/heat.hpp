#pragma once

#include <variant>
#include <vector>

#include "bbpg/fem.hpp"
#include "bbpg/fields.hpp"
#include "bbpg/pcg.hpp"
#include "bbpg/time_ops.hpp"

namespace bbpg {

/// Right-hand side of the form  f(t,x) = sum_i c_i(t) * G_i(x), where each
/// spatial profile is either discrete data (paired through the mass matrix)
/// or a pointwise function (paired through the quadrature load vector).
struct SeparableForcing {
  struct Term {
    TimeCoefficient coeff;
    std::variant<SpatialField, SpatialFn> profile;
  };

  std::vector<Term> terms;

  void add(TimeCoefficient coeff, SpatialField profile) {
    terms.push_back({std::move(coeff), std::move(profile)});
  }
  void add(TimeCoefficient coeff, SpatialFn profile) {
    terms.push_back({std::move(coeff), std::move(profile)});
  }
};

/// Mesh plus assembled forms; everything the time steppers need per level.
struct HeatSystem {
  const SpaceMesh* mesh = nullptr;
  const OperatorMatrix* mass = nullptr;
  const OperatorMatrix* stiffness = nullptr;

  HeatSystem(const SpaceMesh& m, const OperatorMatrix& mass_matrix,
             const OperatorMatrix& stiffness_matrix)
      : mesh(&m), mass(&mass_matrix), stiffness(&stiffness_matrix) {}
};

/// Dual vector with components (G, phi_j) over all nodes.
std::vector<double> pairing_vector(const HeatSystem& sys,
                                   const SeparableForcing::Term& term);

/// Fully discrete state solve. The scheme steps
///   (M + k_1/2 K) y_1       = M g + F_0
///   (M + k_{m+1}/2 K) y_{m+1} = (M - k_m/2 K) y_m + F_m,  m = 1..M-1
///   M y_T                   = (M - k_M/2 K) y_M + F_M
/// with F_m the hat-weighted forcing integrals over the hat supports; see
/// docs/time_stepping.md for the derivation from the space-time weak form.
PCField solve_state(const HeatSystem& sys, const TimeGrid& grid,
                    const SeparableForcing& forcing, const SpatialField& initial);

/// Adjoint right-hand side: an optional piecewise-constant-in-time part (the
/// discrete state) plus optional smooth separable terms (such as -y_d).
struct AdjointRhs {
  const PCField* pc = nullptr;
  SeparableForcing smooth;
};

/// Fully discrete adjoint solve, backward in time:
///   p_M = 0,
///   (M + k_m/2 K) p_{m-1} = (M - k_m/2 K) p_m + H_m,  m = M..1,
/// where H_m collects the interval integrals of the right-hand side.
PLField solve_adjoint(const HeatSystem& sys, const TimeGrid& grid,
                      const AdjointRhs& rhs);

/// Relative defect of the discrete duality identity
///   int (h, y_kh) dt = int (f, p_kh) dt + (g, p_kh(0)),
/// both sides being the bilinear form evaluated through the two schemes.
double duality_residual(const HeatSystem& sys, const TimeGrid& grid,
                        const SeparableForcing& f, const SpatialField& g,
                        const AdjointRhs& h);

}  // namespace bbpg
