#pragma once

#include <array>
#include <optional>
#include <span>
#include <vector>

#include "bbpg/benchmark.hpp"
#include "bbpg/error_norms.hpp"

namespace bbpg {

struct StudyConfig {
  int level_min = 1;
  int level_max = 6;
  std::optional<double> alpha_override;  // otherwise alpha = 2^(-2 level)
  double threshold = 1e-5;
  int max_iter = 500;
  bool parallel = false;
};

/// One study level: parameters, the four error-norm triples and the sweep
/// count. Columns are ordered as in the emitted CSV.
struct LevelResult {
  int level = 0;
  double alpha = 0.0;
  double h = 0.0;
  int time_steps = 0;
  Norms3 control;          // u_kh vs ubar
  Norms3 state;            // y_kh vs ybar
  Norms3 projected_state;  // dual-grid interpolant vs ybar
  Norms3 adjoint;          // p_kh vs pbar
  int iterations = 0;

  // Converged control, kept for trajectory emission; not part of the table
  // comparison or serialization.
  PiecewiseLinear control_trajectory;

  std::array<double, 12> error_columns() const;
};

struct EocTable {
  std::vector<LevelResult> levels;

  /// log2(e_{l-1} / e_l) per error column; first row has no value.
  std::vector<std::array<std::optional<double>, 12>> eoc() const;
};

bool operator==(const LevelResult& a, const LevelResult& b);
bool operator==(const EocTable& a, const EocTable& b);

/// Runs one level of the coupled benchmark study.
LevelResult run_study_level(int level, const StudyConfig& config);

/// Full coupled study; levels may run on a worker pool but the table order
/// is always by level.
EocTable run_convergence_study(const StudyConfig& config);

struct MeasureDiagnostic {
  std::vector<double> alphas;
  std::vector<double> measures;
  double kappa_hat = 0.0;      // least-squares slope of log meas vs log alpha
  bool kappa_infinite = false; // all measures zero
};

/// meas{ t : alpha*a < -q(t) < alpha*b } per alpha, exact per linear piece,
/// and the fitted decay exponent.
MeasureDiagnostic measure_diagnostic(const PiecewiseLinear& q,
                                     std::span<const double> alphas,
                                     const BoxBounds& bounds);

/// Benchmark B* pbar sampled as a fine piecewise-linear function for the
/// analytic kappa diagnostic.
PiecewiseLinear sample_analytic_bstar(const BenchmarkProblem& problem,
                                      int samples_per_unit = 1 << 17);

}  // namespace bbpg
