#pragma once

#include <Eigen/Dense>

#include "gaussent/covariance.hpp"

namespace gaussent {

/// Two-mode density matrix on the truncated basis |a, b>, 0 <= a, b <= n_max,
/// flattened as a * (n_max + 1) + b.
struct FockStateMatrix {
  Eigen::MatrixXcd rho;
  int n_max = 0;
  /// 1 - trace, i.e. the weight lost to truncation.
  double trace_deficit = 0.0;
  /// Set when the truncation deficit exceeds 1e-6.
  bool truncation_warning = false;

  int dim() const noexcept { return (n_max + 1) * (n_max + 1); }
  static int index(int a, int b, int n_max) noexcept { return a * (n_max + 1) + b; }
};

/// TMSV(r) from its Schmidt decomposition, then pure loss eta_b on mode B (and eta_a
/// on mode A) applied through the beamsplitter loss Kraus operators.
FockStateMatrix fock_lossy_tmsv(double r, double eta_b, int n_max, double eta_a = 1.0);

/// Zero-mean two-mode Gaussian state in the Fock basis via the multidimensional
/// Hermite recursion on the Husimi covariance.
FockStateMatrix fock_from_covariance(const CovarianceMatrix& v, int n_max);

/// tr rho1 (ln rho1 - ln rho2) on the truncated space, after renormalizing both to unit
/// trace. Block-diagonal structure shared by both matrices is exploited.
/// Eigenvalues of rho2 below 1e-14 of their block's largest are counted at that floor.
/// Throws RankDeficiencyError when rho1 puts more than 1e-8 total weight on such directions.
double fock_relative_entropy(const FockStateMatrix& rho1, const FockStateMatrix& rho2);

/// von Neumann entropy of a truncated state (renormalized).
double fock_entropy(const FockStateMatrix& rho);

/// Entropy of the mode-A reduction.
double fock_reduced_entropy_a(const FockStateMatrix& rho);

/// Second moments of the quadratures, as a covariance matrix (hbar = 2), computed with
/// truncated ladder operators. Intended for consistency checks.
Matrix4 fock_quadrature_covariance(const FockStateMatrix& rho);

}  // namespace gaussent
