#pragma once

// Independent reference computations for tests. Nothing here calls into the library.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

namespace oracle {

/// -sum p_n ln p_n over the Schmidt coefficients p_n = (1 - l^2) l^{2n}, l = tanh r.
inline double schmidt_entropy(double r, int terms = 4000) {
  const double l2 = std::tanh(r) * std::tanh(r);
  double s = 0.0;
  double p = 1.0 - l2;
  for (int n = 0; n < terms && p > 0.0; ++n) {
    if (p > 1e-300) s -= p * std::log(p);
    p *= l2;
  }
  return s;
}

/// Entropy of a single-mode thermal state of variance nu from its photon-number
/// distribution p_k = nbar^k / (nbar + 1)^{k+1}, nbar = (nu - 1)/2.
inline double thermal_entropy_series(double nu, int terms = 20000) {
  const double nbar = (nu - 1.0) / 2.0;
  if (nbar <= 0.0) return 0.0;
  const double q = nbar / (nbar + 1.0);
  double p = 1.0 / (nbar + 1.0);
  double s = 0.0;
  for (int k = 0; k < terms && p > 1e-300; ++k) {
    s -= p * std::log(p);
    p *= q;
  }
  return s;
}

inline Eigen::MatrixXd omega(int modes) {
  Eigen::MatrixXd w = Eigen::MatrixXd::Zero(2 * modes, 2 * modes);
  for (int k = 0; k < modes; ++k) {
    w(2 * k, 2 * k + 1) = 1.0;
    w(2 * k + 1, 2 * k) = -1.0;
  }
  return w;
}

/// Moduli of the eigenvalues of i Omega V, one per mode, descending.
inline std::vector<double> symplectic_spectrum(const Eigen::MatrixXd& v) {
  const int modes = static_cast<int>(v.rows()) / 2;
  const Eigen::MatrixXcd a = std::complex<double>(0.0, 1.0) * (omega(modes) * v).cast<std::complex<double>>();
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(a);
  std::vector<double> ev;
  for (int i = 0; i < a.rows(); ++i) ev.push_back(std::abs(es.eigenvalues()(i)));
  std::sort(ev.begin(), ev.end(), std::greater<>());
  std::vector<double> out;
  for (int i = 0; i < a.rows(); i += 2) out.push_back(0.5 * (ev[i] + ev[i + 1]));
  return out;
}

/// Flips the sign of p_B.
inline Eigen::Matrix4d partial_transpose(const Eigen::Matrix4d& v) {
  const Eigen::Vector4d d(1.0, 1.0, 1.0, -1.0);
  return d.asDiagonal() * v * d.asDiagonal();
}

inline double g_kernel(double nu) {
  if (nu <= 1.0 + 1e-12) return 0.0;
  const double a = (nu + 1.0) / 2.0;
  const double b = (nu - 1.0) / 2.0;
  return a * std::log(a) - b * std::log(b);
}

inline double entropy(const Eigen::MatrixXd& v) {
  double s = 0.0;
  for (double nu : symplectic_spectrum(v)) s += g_kernel(nu);
  return s;
}

/// tmss(r) with loss eta on mode B, written out entry by entry.
inline Eigen::Matrix4d lossy_tmsv(double r, double eta) {
  const double c = std::cosh(2.0 * r);
  const double s = std::sinh(2.0 * r);
  const double n = eta * c + 1.0 - eta;
  const double k = std::sqrt(eta) * s;
  Eigen::Matrix4d v;
  v << c, 0, k, 0,
       0, c, 0, -k,
       k, 0, n, 0,
       0, -k, 0, n;
  return v;
}

inline Eigen::Matrix2d rotation(double t) {
  Eigen::Matrix2d r;
  r << std::cos(t), std::sin(t), -std::sin(t), std::cos(t);
  return r;
}

inline Eigen::Matrix4d local(const Eigen::Matrix2d& a, const Eigen::Matrix2d& b) {
  Eigen::Matrix4d s = Eigen::Matrix4d::Zero();
  s.topLeftCorner<2, 2>() = a;
  s.bottomRightCorner<2, 2>() = b;
  return s;
}

/// Gaussian conditional variance of entry i given entry j.
inline double conditional_variance(const Eigen::Matrix4d& v, int i, int j) {
  return v(i, i) - v(i, j) * v(i, j) / v(j, j);
}

}  // namespace oracle
