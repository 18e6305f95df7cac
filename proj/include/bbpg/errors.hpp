#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace bbpg {

/// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid configuration (levels out of range, alpha <= 0, bad flags, ...).
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Invalid input data (non-finite values and the like).
class DataError : public Error {
 public:
  using Error::Error;
};

/// A linear solve did not reach its tolerance within the iteration cap.
class SolverError : public Error {
 public:
  SolverError(const std::string& msg, double final_residual)
      : Error(msg), final_residual_(final_residual) {}

  double final_residual() const { return final_residual_; }

 private:
  double final_residual_ = 0.0;
};

/// The fixed-point iteration exhausted max_iter without meeting the threshold.
class NonConvergenceError : public Error {
 public:
  NonConvergenceError(const std::string& msg, std::vector<double> history)
      : Error(msg), residual_history_(std::move(history)) {}

  const std::vector<double>& residual_history() const { return residual_history_; }

 private:
  std::vector<double> residual_history_;
};

/// Filesystem failures, annotated with the offending path.
class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace bbpg
