#include "gaussent/relative_entropy.hpp"

#include <cmath>
#include <complex>
#include <limits>

#include "gaussent/errors.hpp"
#include "gaussent/measures.hpp"
#include "gaussent/symplectic.hpp"

namespace gaussent {
namespace {

using cd = std::complex<double>;

constexpr double kBoundary = 1e-9;

template <int N>
struct Dense {
  using Real = Eigen::Matrix<double, N, N>;
  using Cplx = Eigen::Matrix<cd, N, N>;
};

// Returns tr(G V1)/2 + sum_k ln((nu_k^2 - 1)/4), or +inf if W is on the boundary.
// G = i W^{-1/2} arccoth(H) W^{1/2} Omega with H = W^{1/2} (i Omega) W^{1/2}.
template <int N>
double cross_term(const typename Dense<N>::Real& v1, const typename Dense<N>::Real& w,
                  const typename Dense<N>::Real& omega) {
  using Real = typename Dense<N>::Real;
  using Cplx = typename Dense<N>::Cplx;
  Eigen::SelfAdjointEigenSolver<Real> ws(w);
  if (ws.info() != Eigen::Success) throw NumericError("eigen-solve failed in relative entropy");
  const auto& lam = ws.eigenvalues();
  if (!(lam.minCoeff() > 0.0)) throw NumericError("second argument is not positive definite");
  const auto sq = lam.cwiseSqrt();
  const Real root = ws.eigenvectors() * sq.asDiagonal() * ws.eigenvectors().transpose();
  const Real inv_root = ws.eigenvectors() * sq.cwiseInverse().asDiagonal() * ws.eigenvectors().transpose();

  const Cplx h = cd(0.0, 1.0) * (root * omega * root).template cast<cd>();
  Eigen::SelfAdjointEigenSolver<Cplx> hs(h);
  if (hs.info() != Eigen::Success) throw NumericError("eigen-solve failed for symplectic spectrum");
  const auto& ev = hs.eigenvalues();

  double log_sum = 0.0;
  Eigen::Matrix<double, N, 1> f;
  f.resize(ev.size());
  for (int k = 0; k < ev.size(); ++k) {
    const double nu = std::abs(ev(k));
    if (nu <= 1.0 + kBoundary) return std::numeric_limits<double>::infinity();
    f(k) = std::copysign(0.5 * std::log((nu + 1.0) / (nu - 1.0)), ev(k));
    if (ev(k) > 0.0) log_sum += 0.5 * std::log((nu * nu - 1.0) / 4.0);
  }
  const Cplx acoth = hs.eigenvectors() * f.template cast<cd>().asDiagonal() * hs.eigenvectors().adjoint();
  // tr(G V1) = tr(i W^{-1/2} acoth W^{1/2} Omega V1) = Re tr(i acoth (W^{1/2} Omega V1 W^{-1/2})).
  const Real b = root * omega * v1 * inv_root;
  const double tr = (cd(0.0, 1.0) * (acoth * b.template cast<cd>()).trace()).real();
  return 0.5 * tr + log_sum;
}

}  // namespace

Eigen::MatrixXd gibbs_exponent(const Eigen::MatrixXd& v) {
  const Eigen::MatrixXd root = spd_sqrt(v);
  const Eigen::MatrixXd inv_root = spd_inverse_sqrt(v);
  const Eigen::MatrixXd omega = symplectic_form(static_cast<int>(v.rows() / 2));
  const Eigen::MatrixXcd h = cd(0.0, 1.0) * (root * omega * root).cast<cd>();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> hs(h);
  if (hs.info() != Eigen::Success) throw NumericError("eigen-solve failed for Gibbs exponent");
  Eigen::VectorXd f(hs.eigenvalues().size());
  for (Eigen::Index k = 0; k < f.size(); ++k) {
    const double e = hs.eigenvalues()(k);
    const double nu = std::abs(e);
    if (nu <= 1.0 + kBoundary) throw DomainError("Gibbs exponent diverges for a state on the physical boundary");
    f(k) = std::copysign(0.5 * std::log((nu + 1.0) / (nu - 1.0)), e);
  }
  const Eigen::MatrixXcd acoth = hs.eigenvectors() * f.cast<cd>().asDiagonal() * hs.eigenvectors().adjoint();
  const Eigen::MatrixXcd g = cd(0.0, 1.0) * inv_root.cast<cd>() * acoth * (root * omega).cast<cd>();
  Eigen::MatrixXd out = g.real();
  return 0.5 * (out + out.transpose());
}

double gaussian_relative_entropy(const Eigen::MatrixXd& v1, const Eigen::MatrixXd& v2) {
  if (v1.rows() != v2.rows() || v1.cols() != v2.cols()) throw DomainError("covariance matrices differ in size");
  if (v1 == v2) return 0.0;
  const int modes = static_cast<int>(v1.rows() / 2);
  const Eigen::MatrixXd omega = symplectic_form(modes);
  double cross = 0.0;
  if (modes == 2) {
    cross = cross_term<4>(Matrix4(v1), Matrix4(v2), Matrix4(omega));
  } else {
    cross = cross_term<Eigen::Dynamic>(v1, v2, omega);
  }
  if (std::isinf(cross)) return cross;
  return std::max(0.0, cross - vn_entropy(v1));
}

double gaussian_relative_entropy(const CovarianceMatrix& v1, const CovarianceMatrix& v2) {
  return gaussian_relative_entropy(Eigen::MatrixXd(v1.entries()), Eigen::MatrixXd(v2.entries()));
}

RelativeEntropyTarget::RelativeEntropyTarget(const CovarianceMatrix& v1)
    : v1_(v1.entries()), neg_entropy_(-vn_entropy(v1)) {}

double RelativeEntropyTarget::against(const Matrix4& w) const {
  if (w == v1_) return 0.0;
  const double cross = cross_term<4>(v1_, w, SymplecticForm::omega());
  return cross + neg_entropy_;
}

}  // namespace gaussent
