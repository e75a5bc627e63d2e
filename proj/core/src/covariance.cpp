#include "gaussent/covariance.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "gaussent/diagnostics.hpp"
#include "gaussent/errors.hpp"
#include "gaussent/symplectic.hpp"

namespace gaussent {
namespace {

constexpr int kPB = 3;
constexpr double kRoundOffBand = 1e-12;

void check_eta(double eta) {
  if (!(eta >= 0.0 && eta <= 1.0)) throw DomainError("transmissivity must lie in [0, 1], got " + std::to_string(eta));
}

// Principal square root of a 2x2 SPD matrix with unit determinant.
Matrix2 unimodular_sqrt(const Matrix2& a) {
  return (a + Matrix2::Identity()) / std::sqrt(a.trace() + 2.0);
}

double least_nu(const CovarianceMatrix& v) {
  return symplectic_spectrum(v.entries()).minCoeff();
}

}  // namespace

CovarianceMatrix::CovarianceMatrix() : v_(Matrix4::Identity()) {}

CovarianceMatrix::CovarianceMatrix(const Matrix4& entries) : v_(entries) {
  if (!v_.allFinite()) throw DomainError("covariance matrix has non-finite entries");
  for (int i = 0; i < 4; ++i) {
    for (int j = i + 1; j < 4; ++j) {
      const double a = v_(i, j);
      const double b = v_(j, i);
      const double scale = std::max({1.0, std::abs(a), std::abs(b)});
      if (std::abs(a - b) > kSymmetryTolerance * scale) {
        throw DomainError("covariance matrix is not symmetric at (" + std::to_string(i) + ", " + std::to_string(j) + ")");
      }
      v_(i, j) = v_(j, i) = 0.5 * (a + b);
    }
  }
}

CovarianceMatrix CovarianceMatrix::transformed(const Matrix4& s) const {
  Matrix4 out = s * v_ * s.transpose();
  return CovarianceMatrix(0.5 * (out + out.transpose()));
}

Matrix4 SymplecticForm::omega() {
  Matrix4 o = Matrix4::Zero();
  o(0, 1) = o(2, 3) = 1.0;
  o(1, 0) = o(3, 2) = -1.0;
  return o;
}

bool SymplecticForm::is_symplectic(const Matrix4& s, double tol) {
  const Matrix4 o = omega();
  const double scale = std::max(1.0, s.squaredNorm());
  return (s * o * s.transpose() - o).cwiseAbs().maxCoeff() <= tol * scale;
}

StandardFormParams StandardFormParams::from_entries(double m, double n, double c1, double c2) {
  return with_gaps(m, n, c1, c2, m * n - c1 * c1, m * n - c2 * c2);
}

StandardFormParams StandardFormParams::with_gaps(double m, double n, double c1, double c2, double gap_x,
                                                 double gap_p) {
  return StandardFormParams{m, n, c1, c2, gap_x, gap_p};
}

double StandardFormParams::delta() const noexcept {
  const double d = m - n;
  const double s = c1 + c2;
  return d * d + gap_x + gap_p + s * s;
}

bool StandardFormParams::quadrature_symmetric(double tol) const noexcept {
  return std::abs(c1 + c2) <= tol;
}

CovarianceMatrix StandardFormParams::matrix() const {
  Matrix4 v = Matrix4::Zero();
  v(0, 0) = v(1, 1) = m;
  v(2, 2) = v(3, 3) = n;
  v(0, 2) = v(2, 0) = c1;
  v(1, 3) = v(3, 1) = c2;
  return CovarianceMatrix(v);
}

CovarianceMatrix tmss(double r) {
  if (!std::isfinite(r) || r < 0.0) throw DomainError("squeezing parameter must be finite and non-negative");
  if (r > 25.0) throw DomainError("squeezing parameter above 25 overflows the representation");
  const double ch = std::cosh(2.0 * r);
  const double sh = std::sinh(2.0 * r);
  return StandardFormParams::with_gaps(ch, ch, sh, -sh, 1.0, 1.0).matrix();
}

CovarianceMatrix quadrature_symmetric_state(double m, double n, double c) {
  return StandardFormParams::from_entries(m, n, c, -c).matrix();
}

StandardFormParams lossy_tmsv_form(double r, double eta) {
  if (!std::isfinite(r) || r < 0.0) throw DomainError("squeezing parameter must be finite and non-negative");
  check_eta(eta);
  const double ch = std::cosh(2.0 * r);
  const double sh = std::sinh(2.0 * r);
  const double c = std::sqrt(eta) * sh;
  // m n - c^2 = eta + (1 - eta) cosh 2r, using cosh^2 - sinh^2 = 1.
  const double gap = eta + (1.0 - eta) * ch;
  return StandardFormParams::with_gaps(ch, eta * ch + (1.0 - eta), c, -c, gap, gap);
}

bool validate_physical(const CovarianceMatrix& v) {
  try {
    return least_nu(v) >= 1.0 - kPhysicalityTolerance;
  } catch (const NumericError&) {
    return false;
  }
}

CovarianceMatrix require_physical(const CovarianceMatrix& v, double tolerance) {
  double nu = 0.0;
  try {
    nu = least_nu(v);
  } catch (const NumericError&) {
    throw PhysicalityError("covariance matrix is not positive definite");
  }
  // Round-off sized deficits are not clipped.
  if (nu >= 1.0 - kRoundOffBand) return v;
  if (nu < 1.0 - tolerance) {
    throw PhysicalityError("least symplectic eigenvalue " + std::to_string(nu) + " violates the uncertainty principle");
  }
  // Smallest isotropic noise that lifts the spectrum onto the boundary.
  double hi = 1.0 - nu;
  while (least_nu(add_noise(v, hi)) < 1.0) hi *= 2.0;
  double lo = 0.0;
  for (int it = 0; it < 80 && hi - lo > 1e-17; ++it) {
    const double mid = 0.5 * (lo + hi);
    (least_nu(add_noise(v, mid)) < 1.0 ? lo : hi) = mid;
  }
  warn("covariance matrix clipped onto the physical boundary (least symplectic eigenvalue was " +
       std::to_string(nu) + ")");
  return add_noise(v, hi);
}

StandardFormDecomposition standard_form_decomposition(const CovarianceMatrix& v) {
  const Matrix2 ma = v.block_a();
  const Matrix2 nb = v.block_b();
  const Matrix2 c = v.correlations();
  const double det_m = ma.determinant();
  const double det_n = nb.determinant();
  if (!(ma(0, 0) > 0.0 && det_m > 0.0)) throw DegenerateStateError("mode-A block is not positive definite");
  if (!(nb(0, 0) > 0.0 && det_n > 0.0)) throw DegenerateStateError("mode-B block is not positive definite");

  const double m = std::sqrt(det_m);
  const double n = std::sqrt(det_n);
  const Matrix2 ta = unimodular_sqrt(ma / m);
  const Matrix2 tb = unimodular_sqrt(nb / n);
  const Matrix2 c_local = ta.inverse() * c * tb.inverse();

  Eigen::JacobiSVD<Matrix2> svd(c_local, Eigen::ComputeFullU | Eigen::ComputeFullV);
  Matrix2 u = svd.matrixU();
  Matrix2 w = svd.matrixV();
  double s1 = svd.singularValues()(0);
  double s2 = svd.singularValues()(1);
  // Keep both local maps proper rotations; a reflection moves into the sign of c2.
  if (u.determinant() < 0.0) {
    u.col(1) *= -1.0;
    s2 = -s2;
  }
  if (w.determinant() < 0.0) {
    w.col(1) *= -1.0;
    s2 = -s2;
  }

  StandardFormDecomposition out;
  out.params = StandardFormParams::from_entries(m, n, s1, s2);
  out.local = local_symplectic(ta * u, tb * w);
  return out;
}

StandardFormParams standard_form(const CovarianceMatrix& v) {
  return standard_form_decomposition(v).params;
}

CovarianceMatrix partial_transpose(const CovarianceMatrix& v) {
  Matrix4 out = v.entries();
  out.row(kPB) *= -1.0;
  out.col(kPB) *= -1.0;
  return CovarianceMatrix(out);
}

SymplecticPair symplectic_eigenvalues(const CovarianceMatrix& v) {
  const Eigen::VectorXd nu = symplectic_spectrum(v.entries());
  return {nu(0), nu(1)};
}

namespace {

PtSpectrum spectrum_from_invariants(double delta_tilde, double det_sigma) {
  const double disc = delta_tilde * delta_tilde - 4.0 * det_sigma;
  if (disc < -1e-9 * std::max(1.0, delta_tilde * delta_tilde)) {
    throw NumericError("inconsistent invariants: negative discriminant in partially transposed spectrum");
  }
  if (det_sigma < 0.0) throw NumericError("negative determinant in partially transposed spectrum");
  const double plus_sq = 0.5 * (delta_tilde + std::sqrt(std::max(0.0, disc)));
  const double nu_plus = std::sqrt(plus_sq);
  const double nu_minus = plus_sq > 0.0 ? std::sqrt(det_sigma) / nu_plus : 0.0;
  return {nu_plus, nu_minus, delta_tilde};
}

}  // namespace

PtSpectrum pt_spectrum(const CovarianceMatrix& v) {
  const double det_m = v.block_a().determinant();
  const double det_n = v.block_b().determinant();
  const double det_c = v.correlations().determinant();
  const double det_sigma = v.entries().determinant();
  return spectrum_from_invariants(det_m + det_n - 2.0 * det_c, det_sigma);
}

PtSpectrum pt_spectrum(const StandardFormParams& p) {
  return spectrum_from_invariants(p.delta_tilde(), p.det_sigma());
}

SymplecticPair symplectic_eigenvalues(const StandardFormParams& p) {
  const PtSpectrum s = spectrum_from_invariants(p.delta(), p.det_sigma());
  return {s.nu_plus, s.nu_minus};
}

CovarianceMatrix loss_channel(const CovarianceMatrix& v, double eta, Mode mode) {
  check_eta(eta);
  const int off = mode == Mode::A ? 0 : 2;
  Matrix4 x = Matrix4::Identity();
  x(off, off) = x(off + 1, off + 1) = std::sqrt(eta);
  Matrix4 out = x * v.entries() * x;
  out(off, off) += 1.0 - eta;
  out(off + 1, off + 1) += 1.0 - eta;
  return CovarianceMatrix(out);
}

CovarianceMatrix add_noise(const CovarianceMatrix& v, double epsilon) {
  if (!(epsilon >= 0.0) || !std::isfinite(epsilon)) throw DomainError("excess noise must be finite and non-negative");
  return CovarianceMatrix(v.entries() + epsilon * Matrix4::Identity());
}

Matrix2 rotation(double theta) {
  Matrix2 r;
  r << std::cos(theta), std::sin(theta), -std::sin(theta), std::cos(theta);
  return r;
}

Matrix2 single_mode_squeezer(double r) {
  Matrix2 s = Matrix2::Zero();
  s(0, 0) = std::exp(-r);
  s(1, 1) = std::exp(r);
  return s;
}

Matrix4 local_symplectic(const Matrix2& a, const Matrix2& b) {
  Matrix4 s = Matrix4::Zero();
  s.topLeftCorner<2, 2>() = a;
  s.bottomRightCorner<2, 2>() = b;
  return s;
}

Matrix4 two_mode_squeezer(double r) {
  const double ch = std::cosh(r);
  const double sh = std::sinh(r);
  Matrix4 s = Matrix4::Zero();
  s(0, 0) = s(1, 1) = s(2, 2) = s(3, 3) = ch;
  s(0, 2) = s(2, 0) = sh;
  s(1, 3) = s(3, 1) = -sh;
  return s;
}

Matrix4 beamsplitter(double t) {
  check_eta(t);
  const double a = std::sqrt(t);
  const double b = std::sqrt(1.0 - t);
  Matrix4 s = Matrix4::Zero();
  s(0, 0) = s(1, 1) = s(2, 2) = s(3, 3) = a;
  s(0, 2) = s(1, 3) = b;
  s(2, 0) = s(3, 1) = -b;
  return s;
}

}  // namespace gaussent
