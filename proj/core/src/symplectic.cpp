#include "gaussent/symplectic.hpp"

#include <algorithm>
#include <complex>
#include <functional>
#include <vector>

#include "gaussent/errors.hpp"

namespace gaussent {

Eigen::MatrixXd symplectic_form(int modes) {
  Eigen::MatrixXd omega = Eigen::MatrixXd::Zero(2 * modes, 2 * modes);
  for (int k = 0; k < modes; ++k) {
    omega(2 * k, 2 * k + 1) = 1.0;
    omega(2 * k + 1, 2 * k) = -1.0;
  }
  return omega;
}

Eigen::MatrixXd spd_sqrt(const Eigen::MatrixXd& a) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(a);
  if (es.info() != Eigen::Success) throw NumericError("eigen-solve failed in matrix square root");
  const Eigen::VectorXd w = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  return es.eigenvectors() * w.asDiagonal() * es.eigenvectors().transpose();
}

Eigen::MatrixXd spd_inverse_sqrt(const Eigen::MatrixXd& a) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(a);
  if (es.info() != Eigen::Success) throw NumericError("eigen-solve failed in inverse square root");
  if (es.eigenvalues().minCoeff() <= 0.0) throw NumericError("matrix is not positive definite");
  const Eigen::VectorXd w = es.eigenvalues().cwiseSqrt().cwiseInverse();
  return es.eigenvectors() * w.asDiagonal() * es.eigenvectors().transpose();
}

Eigen::VectorXd symplectic_spectrum(const Eigen::MatrixXd& v) {
  const Eigen::Index dim = v.rows();
  if (dim != v.cols() || dim % 2 != 0 || dim == 0) throw DomainError("covariance matrix must be square with even size");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(v);
  if (es.info() != Eigen::Success) throw NumericError("eigen-solve failed for covariance matrix");
  if (!(es.eigenvalues().minCoeff() > 0.0)) throw NumericError("covariance matrix is not positive definite");
  const Eigen::MatrixXd root =
      es.eigenvectors() * es.eigenvalues().cwiseSqrt().asDiagonal() * es.eigenvectors().transpose();

  const Eigen::MatrixXd omega = symplectic_form(static_cast<int>(dim / 2));
  const Eigen::MatrixXcd h = std::complex<double>(0.0, 1.0) * (root * omega * root).cast<std::complex<double>>();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> hs(h, Eigen::EigenvaluesOnly);
  if (hs.info() != Eigen::Success) throw NumericError("eigen-solve failed for symplectic spectrum");

  // Eigenvalues come in +-nu pairs; take the upper half.
  Eigen::VectorXd all = hs.eigenvalues();
  std::vector<double> vals(all.data(), all.data() + all.size());
  std::sort(vals.begin(), vals.end(), std::greater<>());
  Eigen::VectorXd nu(dim / 2);
  for (Eigen::Index k = 0; k < dim / 2; ++k) nu(k) = vals[static_cast<std::size_t>(k)];
  return nu;
}

Eigen::MatrixXd reduce_to_modes(const Eigen::MatrixXd& v, std::span<const int> modes) {
  const auto k = static_cast<Eigen::Index>(modes.size());
  Eigen::MatrixXd out(2 * k, 2 * k);
  for (Eigen::Index a = 0; a < k; ++a) {
    for (Eigen::Index b = 0; b < k; ++b) {
      out.block<2, 2>(2 * a, 2 * b) = v.block<2, 2>(2 * modes[a], 2 * modes[b]);
    }
  }
  return out;
}

Eigen::MatrixXd embed_two_mode(const Eigen::Matrix4d& s, int modes, int i, int j) {
  Eigen::MatrixXd out = Eigen::MatrixXd::Identity(2 * modes, 2 * modes);
  const int idx[2] = {i, j};
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 2; ++b) {
      out.block<2, 2>(2 * idx[a], 2 * idx[b]) = s.block<2, 2>(2 * a, 2 * b);
    }
  }
  return out;
}

}  // namespace gaussent
