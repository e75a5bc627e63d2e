#include "gaussent/measures.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "gaussent/errors.hpp"
#include "gaussent/symplectic.hpp"

namespace gaussent {
namespace {

constexpr double kQuadSymTolerance = 1e-6;
constexpr double kInvPhi = 0.6180339887498948482;

// (x + 1) ln(x + 1) - x ln x for x >= 0, without cancellation at large x.
double bose_entropy(double x) {
  if (x <= 0.0) return 0.0;
  return std::log1p(x) + x * std::log1p(1.0 / x);
}

template <class F>
double golden_minimize(F&& f, double lo, double hi, double tol, double* argmin) {
  double a = lo;
  double b = hi;
  double c = b - kInvPhi * (b - a);
  double d = a + kInvPhi * (b - a);
  double fc = f(c);
  double fd = f(d);
  while (b - a > tol) {
    if (fc <= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - kInvPhi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + kInvPhi * (b - a);
      fd = f(d);
    }
  }
  const double x = fc <= fd ? c : d;
  if (argmin) *argmin = x;
  return std::min(fc, fd);
}

// Coarse grid followed by golden-section refinement around the best grid point.
template <class F>
double grid_golden_minimize(F&& f, double lo, double hi, int points, double tol, double* argmin) {
  const double step = (hi - lo) / (points - 1);
  int best = 0;
  double best_val = std::numeric_limits<double>::infinity();
  for (int i = 0; i < points; ++i) {
    const double val = f(lo + i * step);
    if (val < best_val) {
      best_val = val;
      best = i;
    }
  }
  const double a = lo + std::max(0, best - 1) * step;
  const double b = lo + std::min(points - 1, best + 1) * step;
  double x = lo + best * step;
  const double refined = golden_minimize(f, a, b, tol, &x);
  if (refined <= best_val) {
    if (argmin) *argmin = x;
    return refined;
  }
  if (argmin) *argmin = lo + best * step;
  return best_val;
}

}  // namespace

double entropy_kernel(double nu) {
  if (std::isnan(nu) || nu < 1.0 - kPhysicalityTolerance) {
    throw DomainError("symplectic eigenvalue " + std::to_string(nu) + " below the vacuum level");
  }
  if (nu < 1.0 + 1e-12) return 0.0;
  if (std::isinf(nu)) return std::numeric_limits<double>::infinity();
  return bose_entropy(0.5 * (nu - 1.0));
}

double vn_entropy(const Eigen::MatrixXd& v) {
  const Eigen::VectorXd nu = symplectic_spectrum(v);
  double s = 0.0;
  for (Eigen::Index k = 0; k < nu.size(); ++k) s += entropy_kernel(nu(k));
  return s;
}

double vn_entropy(const CovarianceMatrix& v) {
  return vn_entropy(Eigen::MatrixXd(v.entries()));
}

double vn_entropy(const StandardFormParams& p) {
  const SymplecticPair nu = symplectic_eigenvalues(p);
  return entropy_kernel(nu.nu_plus) + entropy_kernel(nu.nu_minus);
}

double entanglement_entropy(const CovarianceMatrix& v) {
  const SymplecticPair nu = symplectic_eigenvalues(v);
  if (std::abs(nu.nu_plus - 1.0) > 1e-6 || std::abs(nu.nu_minus - 1.0) > 1e-6) {
    throw PurityError("entanglement entropy requires a pure state; symplectic eigenvalues are " +
                      std::to_string(nu.nu_plus) + ", " + std::to_string(nu.nu_minus));
  }
  return entropy_kernel(std::sqrt(v.block_a().determinant()));
}

double tmss_entanglement_entropy(double r) {
  const double s = std::sinh(r);
  return bose_entropy(s * s);
}

double eof_from_r0(double r0) {
  if (r0 <= 0.0) return 0.0;
  const double s = std::sinh(r0);
  return bose_entropy(s * s);
}

double log_negativity(const StandardFormParams& p) {
  return std::max(0.0, -std::log(pt_spectrum(p).nu_minus));
}

double log_negativity(const CovarianceMatrix& v) {
  return std::max(0.0, -std::log(pt_spectrum(v).nu_minus));
}

bool ppt_separable(const CovarianceMatrix& v) {
  return pt_spectrum(v).nu_minus >= 1.0 - kPhysicalityTolerance;
}

EofResult eof_quadrature_symmetric(const StandardFormParams& p) {
  const double m = p.m;
  const double n = p.n;
  EofResult out{};
  double det_sigma = 0.0;
  double symmetric_radicand = 0.0;
  if (p.quadrature_symmetric(kQuadSymTolerance)) {
    const double c = 0.5 * (p.c1 - p.c2);
    const double half_sum = 0.5 * (p.c1 + p.c2);
    const double gap = 0.5 * (p.gap_x + p.gap_p) + half_sum * half_sum;
    det_sigma = gap * gap;
    out.lambda_plus = (m + n + 2.0 * c) * (m + n + 2.0 * c);
    out.lambda_minus = (m + n - 2.0 * c) * (m + n - 2.0 * c);
    out.exact = true;
    // kappa^2 - lambda_+ lambda_- in factored form; the direct difference loses half the
    // digits near pure states, where it vanishes.
    out.kappa = 2.0 * (det_sigma + 1.0) - (m - n) * (m - n);
    const double root = std::abs((m + n) * (m + n) - 4.0 * c * c);
    symmetric_radicand = 2.0 * ((gap - 1.0) * (gap - 1.0) - (m - n) * (m - n)) * (out.kappa + root);
  } else {
    det_sigma = p.det_sigma();
    const double base = p.delta_tilde() + 2.0 * (m * n - p.c1 * p.c2);
    const double cross = 2.0 * (p.c1 - p.c2) * (m + n);
    out.lambda_plus = base + cross;
    out.lambda_minus = base - cross;
    out.exact = false;
  }
  out.kappa = 2.0 * (det_sigma + 1.0) - (m - n) * (m - n);

  const double radicand =
      out.exact ? symmetric_radicand : out.kappa * out.kappa - out.lambda_plus * out.lambda_minus;
  if (radicand < -1e-9 * std::max(1.0, out.kappa * out.kappa)) {
    throw DomainError("negative radicand in minimal-squeezing formula");
  }
  // r0 = (1/4) ln((kappa - sqrt(.)) / lambda_-), rationalized to avoid dividing by lambda_-.
  const double denom = out.kappa + std::sqrt(std::max(0.0, radicand));
  double r0 = 0.0;
  if (denom > 0.0 && out.lambda_plus > 0.0) r0 = 0.25 * std::log(out.lambda_plus / denom);
  out.r0 = std::max(0.0, r0);
  out.eof_nats = eof_from_r0(out.r0);
  return out;
}

EofResult eof_quadrature_symmetric(const CovarianceMatrix& v) {
  return eof_quadrature_symmetric(standard_form(v));
}

ExtractableSqueezing max_extractable_squeezing(const CovarianceMatrix& v) {
  const StandardFormParams p = standard_form(v);
  if (!p.quadrature_symmetric(kQuadSymTolerance)) {
    throw SymmetryError("maximal local squeezing requires a quadrature-symmetric state");
  }
  const double c = 0.5 * (p.c1 - p.c2);
  const Matrix4 quarter = local_symplectic(Matrix2::Identity(), rotation(0.5 * std::numbers::pi));
  const CovarianceMatrix rotated = quadrature_symmetric_state(p.m, p.n, c).transformed(quarter);

  auto variance = [&](double t) {
    const Matrix2 a = rotated.transformed(beamsplitter(std::clamp(t, 0.0, 1.0))).block_a();
    return Eigen::SelfAdjointEigenSolver<Matrix2>(a, Eigen::EigenvaluesOnly).eigenvalues()(0);
  };
  ExtractableSqueezing out{};
  out.min_variance = grid_golden_minimize(variance, 0.0, 1.0, 201, 1e-10, &out.transmissivity);
  return out;
}

double duan_sum(const StandardFormParams& p) {
  const double corr = std::abs(p.c1 - p.c2);
  // The optimal sign s cancels |c1 - c2|; u = a^2 enters through t = ln u.
  auto f = [&](double t) {
    const double u = std::exp(t);
    return (2.0 * (u * p.m + p.n / u) - 2.0 * corr) / (u + 1.0 / u);
  };
  return grid_golden_minimize(f, -12.0, 12.0, 241, 1e-8, nullptr);
}

double duan_sum(const CovarianceMatrix& v) {
  return duan_sum(standard_form(v));
}

SteeringResult reid_steering(const StandardFormParams& p) {
  if (!(p.m > 0.0) || !(p.n > 0.0)) throw DegenerateStateError("conditioning variance is not positive");
  SteeringResult s{};
  s.var_xb_given_xa = p.gap_x / p.m;
  s.var_pb_given_pa = p.gap_p / p.m;
  s.var_xa_given_xb = p.gap_x / p.n;
  s.var_pa_given_pb = p.gap_p / p.n;
  s.forward_product = s.var_xb_given_xa * s.var_pb_given_pa;
  s.reverse_product = s.var_xa_given_xb * s.var_pa_given_pb;
  return s;
}

SteeringResult reid_steering(const CovarianceMatrix& v) {
  return reid_steering(standard_form(v));
}

double coherent_information(const StandardFormParams& p) {
  return entropy_kernel(p.n) - vn_entropy(p);
}

double reverse_coherent_information(const StandardFormParams& p) {
  return entropy_kernel(p.m) - vn_entropy(p);
}

double coherent_information(const CovarianceMatrix& v) {
  return coherent_information(standard_form(v));
}

double reverse_coherent_information(const CovarianceMatrix& v) {
  return reverse_coherent_information(standard_form(v));
}

}  // namespace gaussent
