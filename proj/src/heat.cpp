#include "bbpg/heat.hpp"

#include <cmath>

namespace bbpg {

namespace {

// (M + beta K) and (M - beta K) on the interior dofs, rebuilt only when the
// step size changes (one build for uniform grids).
class StepOperators {
 public:
  explicit StepOperators(const HeatSystem& sys) : sys_(&sys) {}

  const CsrMatrix& plus(double beta) {
    if (!have_ || beta != beta_) build(beta);
    return plus_;
  }
  const CsrMatrix& minus(double beta) {
    if (!have_ || beta != beta_) build(beta);
    return minus_;
  }

 private:
  void build(double beta) {
    plus_ = CsrMatrix::combine(sys_->mass->interior, 1.0,
                               sys_->stiffness->interior, beta);
    minus_ = CsrMatrix::combine(sys_->mass->interior, 1.0,
                                sys_->stiffness->interior, -beta);
    beta_ = beta;
    have_ = true;
  }

  const HeatSystem* sys_;
  CsrMatrix plus_, minus_;
  double beta_ = 0.0;
  bool have_ = false;
};

std::vector<double> restrict_nodes(const SpaceMesh& mesh,
                                   const std::vector<double>& full) {
  std::vector<double> out(mesh.interior_count());
  for (std::size_t r = 0; r < out.size(); ++r) {
    out[r] = full[mesh.interior_nodes[r]];
  }
  return out;
}

struct TermData {
  std::vector<double> pairing_full;
  std::vector<double> pairing_int;
};

std::vector<TermData> prepare_terms(const HeatSystem& sys,
                                    const SeparableForcing& forcing) {
  std::vector<TermData> out;
  out.reserve(forcing.terms.size());
  for (const auto& term : forcing.terms) {
    TermData data;
    data.pairing_full = pairing_vector(sys, term);
    data.pairing_int = restrict_nodes(*sys.mesh, data.pairing_full);
    out.push_back(std::move(data));
  }
  return out;
}

}  // namespace

std::vector<double> pairing_vector(const HeatSystem& sys,
                                   const SeparableForcing::Term& term) {
  if (const auto* field = std::get_if<SpatialField>(&term.profile)) {
    return sys.mass->full.multiply(field->values);
  }
  return load_vector(*sys.mesh, std::get<SpatialFn>(term.profile)).values;
}

PCField solve_state(const HeatSystem& sys, const TimeGrid& grid,
                    const SeparableForcing& forcing, const SpatialField& initial) {
  const SpaceMesh& mesh = *sys.mesh;
  const int steps = grid.intervals();

  const std::vector<TermData> terms = prepare_terms(sys, forcing);
  std::vector<std::vector<double>> weights;
  weights.reserve(forcing.terms.size());
  for (const auto& term : forcing.terms) {
    weights.push_back(hat_weights(term.coeff, grid));
  }

  StepOperators ops(sys);
  PcgOptions pcg;

  PCField state;
  state.grid = grid;
  state.interval_values.reserve(steps);

  const auto forcing_at = [&](int m, std::vector<double>& rhs) {
    for (std::size_t i = 0; i < terms.size(); ++i) {
      const double w = weights[i][m];
      const auto& p = terms[i].pairing_int;
      for (std::size_t r = 0; r < rhs.size(); ++r) rhs[r] += w * p[r];
    }
  };

  // First step: the descending hat pairs the initial value with M g.
  std::vector<double> rhs =
      restrict_nodes(mesh, sys.mass->full.multiply(initial.values));
  forcing_at(0, rhs);
  std::vector<double> current =
      pcg_jacobi(ops.plus(0.5 * grid.dt(0)), rhs, pcg).x;
  state.interval_values.push_back(scatter_interior(mesh, current));

  for (int m = 1; m < steps; ++m) {
    rhs = ops.minus(0.5 * grid.dt(m - 1)).multiply(current);
    forcing_at(m, rhs);
    current = pcg_jacobi(ops.plus(0.5 * grid.dt(m)), rhs, pcg).x;
    state.interval_values.push_back(scatter_interior(mesh, current));
  }

  // Terminal dof from the ascending final hat.
  rhs = ops.minus(0.5 * grid.dt(steps - 1)).multiply(current);
  forcing_at(steps, rhs);
  state.terminal_value =
      scatter_interior(mesh, pcg_jacobi(sys.mass->interior, rhs, pcg).x);

  return state;
}

PLField solve_adjoint(const HeatSystem& sys, const TimeGrid& grid,
                      const AdjointRhs& rhs) {
  const SpaceMesh& mesh = *sys.mesh;
  const int steps = grid.intervals();

  const std::vector<TermData> terms = prepare_terms(sys, rhs.smooth);
  std::vector<std::vector<double>> integrals;
  integrals.reserve(rhs.smooth.terms.size());
  for (const auto& term : rhs.smooth.terms) {
    integrals.push_back(interval_integrals(term.coeff, grid));
  }

  StepOperators ops(sys);
  PcgOptions pcg;

  PLField adjoint;
  adjoint.grid = grid;
  adjoint.node_values.assign(steps + 1, SpatialField(mesh.node_count()));

  std::vector<double> current(mesh.interior_count(), 0.0);  // p_M = 0
  for (int m = steps; m >= 1; --m) {
    const double beta = 0.5 * grid.dt(m - 1);
    std::vector<double> load = ops.minus(beta).multiply(current);
    if (rhs.pc != nullptr) {
      // Exact integral of the piecewise-constant part: k_m (y_m, phi_j).
      const std::vector<double> my = sys.mass->interior.multiply(
          restrict_nodes(mesh, rhs.pc->interval_values[m - 1].values));
      const double km = grid.dt(m - 1);
      for (std::size_t r = 0; r < load.size(); ++r) load[r] += km * my[r];
    }
    for (std::size_t i = 0; i < terms.size(); ++i) {
      const double s = integrals[i][m - 1];
      const auto& p = terms[i].pairing_int;
      for (std::size_t r = 0; r < load.size(); ++r) load[r] += s * p[r];
    }
    current = pcg_jacobi(ops.plus(beta), load, pcg).x;
    adjoint.node_values[m - 1] = scatter_interior(mesh, current);
  }
  return adjoint;
}

double duality_residual(const HeatSystem& sys, const TimeGrid& grid,
                        const SeparableForcing& f, const SpatialField& g,
                        const AdjointRhs& h) {
  const PCField y = solve_state(sys, grid, f, g);
  const PLField p = solve_adjoint(sys, grid, h);
  const int steps = grid.intervals();

  // int (h, y_kh) dt, interval by interval, with the same quadrature the
  // adjoint scheme uses for its loads.
  double lhs = 0.0;
  for (int m = 0; m < steps; ++m) {
    const auto& ym = y.interval_values[m];
    if (h.pc != nullptr) {
      lhs += grid.dt(m) * mass_inner(*sys.mass, h.pc->interval_values[m], ym);
    }
  }
  for (const auto& term : h.smooth.terms) {
    const std::vector<double> pair = pairing_vector(sys, term);
    const std::vector<double> ints = interval_integrals(term.coeff, grid);
    for (int m = 0; m < steps; ++m) {
      lhs += ints[m] * dot(pair, y.interval_values[m].values);
    }
  }

  // int (f, p_kh) dt + (g, p_kh(0)) through the hat expansion of p_kh.
  double rhs = 0.0;
  for (const auto& term : f.terms) {
    const std::vector<double> pair = pairing_vector(sys, term);
    const std::vector<double> w = hat_weights(term.coeff, grid);
    for (int m = 0; m <= steps; ++m) {
      rhs += w[m] * dot(pair, p.node_values[m].values);
    }
  }
  const double initial_term = mass_inner(*sys.mass, g, p.node_values[0]);
  rhs += initial_term;

  const double scale =
      std::abs(lhs) + std::abs(rhs - initial_term) + std::abs(initial_term);
  if (scale == 0.0) return 0.0;
  return std::abs(lhs - rhs) / scale;
}

}  // namespace bbpg
