#include "bbpg/benchmark.hpp"

#include <cmath>
#include <numbers>

namespace bbpg {

namespace {
constexpr double kPi = std::numbers::pi;
}

double BenchmarkProblem::g1(double x1, double x2) {
  return std::sin(kPi * x1) * std::sin(kPi * x2);
}

double BenchmarkProblem::phase(double t) const {
  return 2.0 * kPi * frequency * t / horizon;
}

double BenchmarkProblem::adjoint_coeff(double t) const {
  return -horizon / (2.0 * kPi * frequency) * std::sin(phase(t));
}

double BenchmarkProblem::state_coeff(double t) const {
  return std::cos(phase(t));
}

double BenchmarkProblem::desired_coeff(double t) const {
  return kPi * horizon / frequency * std::sin(phase(t));
}

double BenchmarkProblem::bstar_adjoint_exact(double t) const {
  return 0.25 * adjoint_coeff(t);  // (g1, g1) = 1/4
}

std::vector<double> BenchmarkProblem::switch_times() const {
  const int count = static_cast<int>(std::lround(2.0 * frequency)) - 1;
  std::vector<double> times(count);
  for (int j = 1; j <= count; ++j) {
    times[j - 1] = j * horizon / (2.0 * frequency);
  }
  return times;
}

PiecewiseConstant BenchmarkProblem::exact_control() const {
  PiecewiseConstant u;
  u.t0 = 0.0;
  u.t1 = horizon;
  u.switches = switch_times();
  u.values.resize(u.switches.size() + 1);
  // (g1, pbar) < 0 on the first arc, so the control starts at the upper bound
  // and alternates.
  for (std::size_t r = 0; r < u.values.size(); ++r) {
    u.values[r] = (r % 2 == 0) ? bounds.upper : bounds.lower;
  }
  return u;
}

double BenchmarkProblem::forcing_coeff(double t) const {
  const double smooth =
      2.0 * kPi *
      (-(frequency / horizon) * std::sin(phase(t)) + kPi * std::cos(phase(t)));
  return smooth - exact_control()(t);
}

ControlProblem BenchmarkProblem::make_problem(const SpaceMesh& mesh) const {
  ControlProblem problem;
  problem.bounds = bounds;
  problem.control_profile =
      interpolate_nodal(mesh, &BenchmarkProblem::g1, TargetSpace::dirichlet);
  problem.initial_value = problem.control_profile;

  const PiecewiseConstant ubar = exact_control();
  const double a = frequency;
  const double T = horizon;
  TimeCoefficient c0;
  c0.fn = [a, T, ubar](double t) {
    const double ph = 2.0 * kPi * a * t / T;
    return 2.0 * kPi * (-(a / T) * std::sin(ph) + kPi * std::cos(ph)) - ubar(t);
  };
  c0.breakpoints = ubar.switches;
  problem.base_forcing.add(std::move(c0), problem.control_profile);

  TimeCoefficient cd;
  cd.fn = [a, T](double t) {
    return kPi * T / a * std::sin(2.0 * kPi * a * t / T);
  };
  problem.desired_state.add(std::move(cd), problem.control_profile);
  return problem;
}

double study_alpha(int level) { return std::exp2(-2.0 * level); }

int study_time_steps(int level) {
  return static_cast<int>(std::lround(std::exp2(1.5 * level + 1.0)));
}

}  // namespace bbpg
