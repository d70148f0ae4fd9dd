#pragma once

#include <stdexcept>
#include <string>

namespace fplap {

/// Invalid parameter values, inconsistent grids, bad points.
class invalid_argument_error : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Iterative solver ran out of iterations.
class non_convergence_error : public std::runtime_error {
 public:
  non_convergence_error(int iters, double residual)
      : std::runtime_error("solver did not converge after " + std::to_string(iters) +
                           " iterations (residual " + std::to_string(residual) + ")"),
        iterations(iters),
        final_residual(residual) {}
  int iterations;
  double final_residual;
};

/// Explicit flow blew up even after step-size reduction.
class instability_error : public std::runtime_error {
 public:
  explicit instability_error(double sup)
      : std::runtime_error("iterate sup-norm " + std::to_string(sup) +
                           " exceeded the stability ceiling"),
        sup_norm(sup) {}
  double sup_norm;
};

/// No admissible sliding step up to tau_max.
class not_slidable_error : public std::runtime_error {
 public:
  explicit not_slidable_error(double tau_max)
      : std::runtime_error("no grid-compatible tau in (0, " + std::to_string(tau_max) +
                           "] keeps the translate below the field"),
        tau_max(tau_max) {}
  double tau_max;
};

/// Eigen iterate kept negative interior values.
class sign_violation_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Config text rejected; carries line/column of the offending token.
class config_error : public std::runtime_error {
 public:
  config_error(int line, int column, const std::string& what_arg)
      : std::runtime_error("config error at line " + std::to_string(line) + ", column " +
                           std::to_string(column) + ": " + what_arg),
        line(line),
        column(column) {}
  int line;
  int column;
};

}  // namespace fplap
