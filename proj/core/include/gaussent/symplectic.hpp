#pragma once

#include <Eigen/Dense>

#include <span>

namespace gaussent {

/// Symplectic form for `modes` modes, xpxp ordering.
Eigen::MatrixXd symplectic_form(int modes);

/// Symplectic eigenvalues of an n-mode covariance matrix, sorted descending.
/// Computed as the positive eigenvalues of the Hermitian matrix V^{1/2} (i Omega) V^{1/2}.
/// Throws NumericError if V is not positive definite or the solver fails.
Eigen::VectorXd symplectic_spectrum(const Eigen::MatrixXd& v);

/// Covariance of the listed modes (in the given order).
Eigen::MatrixXd reduce_to_modes(const Eigen::MatrixXd& v, std::span<const int> modes);

/// Embed a two-mode symplectic acting on modes (i, j) into an n-mode identity.
Eigen::MatrixXd embed_two_mode(const Eigen::Matrix4d& s, int modes, int i, int j);

/// Symmetric positive (semi)definite square root and inverse square root.
Eigen::MatrixXd spd_sqrt(const Eigen::MatrixXd& a);
Eigen::MatrixXd spd_inverse_sqrt(const Eigen::MatrixXd& a);

}  // namespace gaussent
