#pragma once

#include <Eigen/Dense>

#include "gaussent/covariance.hpp"

namespace gaussent {

/// S(rho1 || rho2) for zero-mean Gaussian states, in nats:
///   -S(V1) + tr(G2 V1)/2 + sum_k ln((nu_k^2 - 1)/4),
/// where G2 is the Gibbs exponent of V2 and nu_k its symplectic eigenvalues.
/// Returns 0 for identical inputs and +infinity when V2 lies on the physical boundary
/// (least symplectic eigenvalue within 1e-9 of 1) while V1 differs from it.
double gaussian_relative_entropy(const CovarianceMatrix& v1, const CovarianceMatrix& v2);

/// n-mode version.
double gaussian_relative_entropy(const Eigen::MatrixXd& v1, const Eigen::MatrixXd& v2);

/// Gibbs exponent G with rho proportional to exp(-xi^T G xi / 2); requires nu > 1.
Eigen::MatrixXd gibbs_exponent(const Eigen::MatrixXd& v);

/// Relative entropy with the first argument fixed, for repeated evaluation.
class RelativeEntropyTarget {
 public:
  explicit RelativeEntropyTarget(const CovarianceMatrix& v1);

  /// S(V1 || W) for a symmetric positive definite W (not re-validated).
  double against(const Matrix4& w) const;

  const Matrix4& target() const noexcept { return v1_; }

 private:
  Matrix4 v1_;
  double neg_entropy_;
};

}  // namespace gaussent
