#pragma once

#include <Eigen/Dense>

#include <cstddef>
#include <functional>

namespace gaussent {

struct NelderMeadOptions {
  std::size_t max_evaluations = 20000;
  /// Stop when the spread of simplex values falls below f_tolerance (absolute)...
  double f_tolerance = 1e-13;
  /// ...and the simplex diameter below x_tolerance.
  double x_tolerance = 1e-9;
  /// Restart from the best vertex with a fresh simplex until a restart gains less than this.
  double restart_gain = 1e-12;
  std::size_t max_restarts = 6;
  double initial_step = 0.1;
};

struct NelderMeadResult {
  Eigen::VectorXd x;
  double value;
  std::size_t evaluations;
  std::size_t iterations;
  std::size_t restarts;
};

/// Derivative-free simplex descent with dimension-adaptive coefficients and
/// restarts. The objective may return +infinity for points outside its domain.
NelderMeadResult nelder_mead(const std::function<double(const Eigen::VectorXd&)>& f, const Eigen::VectorXd& x0,
                             const NelderMeadOptions& options = {});

}  // namespace gaussent
