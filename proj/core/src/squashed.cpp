#include "gaussent/squashed.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>
#include <vector>

#include "gaussent/diagnostics.hpp"
#include "gaussent/errors.hpp"
#include "gaussent/measures.hpp"
#include "gaussent/symplectic.hpp"

namespace gaussent {
namespace {

constexpr double kFitTolerance = 1e-6;
constexpr double kSymTolerance = 1e-6;

// Largest |c| keeping (m, n, c, -c) physical: c^2 = (max(m,n) + 1)(min(m,n) - 1).
double max_symmetric_correlation(double m, double n) {
  const double hi = std::max(m, n);
  const double lo = std::min(m, n);
  return std::sqrt(std::max(0.0, (hi + 1.0) * (lo - 1.0)));
}

// Extended state in the standard-form frame: modes A, B, E1, E2.
Eigen::MatrixXd extended_standard(const ChannelFit& fit) {
  Eigen::MatrixXd x = Eigen::MatrixXd::Identity(8, 8);
  const Matrix4 source = tmss(fit.r).entries();
  const Matrix4 thermal = tmss(0.5 * std::acosh(fit.thermal_nu)).entries();
  x.topLeftCorner<4, 4>() = source;      // A, R
  x.bottomRightCorner<4, 4>() = thermal; // E1 (thermal input), E2
  const Eigen::MatrixXd bs = embed_two_mode(beamsplitter(fit.eta), 4, 1, 2);
  Eigen::MatrixXd out = bs * x * bs.transpose();
  return 0.5 * (out + out.transpose());
}

}  // namespace

CovarianceMatrix symmetrize(const CovarianceMatrix& v) {
  const StandardFormParams p = standard_form(v);
  double c = 0.5 * (std::abs(p.c1) + std::abs(p.c2));
  const double c_max = max_symmetric_correlation(p.m, p.n);
  if (c > c_max) {
    if (c - c_max > 1e-12 * std::max(1.0, c)) {
      warn("symmetrized correlations lowered from " + std::to_string(c) + " to the physical boundary " +
           std::to_string(c_max));
    }
    c = c_max;
  }
  return quadrature_symmetric_state(p.m, p.n, c);
}

ChannelFit fit_channel(const StandardFormParams& p) {
  if (!p.quadrature_symmetric(kSymTolerance)) {
    throw SymmetryError("channel fit requires a quadrature-symmetric state");
  }
  const double c = 0.5 * (p.c1 - p.c2);
  ChannelFit fit{0.0, 1.0, 1.0};
  if (p.m <= 1.0 + 1e-12) {
    if (std::abs(c) > kFitTolerance) throw DecompositionError("correlations with a vacuum mode A");
    fit.eta = 0.0;
    fit.thermal_nu = std::max(1.0, p.n);
    return fit;
  }
  fit.r = 0.5 * std::acosh(p.m);
  const double sh2 = p.m * p.m - 1.0;
  double eta = c * c / sh2;
  if (eta > 1.0 + kFitTolerance) {
    throw DecompositionError("state needs an amplifying channel (eta = " + std::to_string(eta) + ")");
  }
  eta = std::min(eta, 1.0);
  double nu = 1.0;
  if (eta < 1.0 - 1e-12) {
    nu = (p.n - eta * p.m) / (1.0 - eta);
    if (nu < 1.0 - kFitTolerance) {
      throw DecompositionError("thermal input below vacuum (nu = " + std::to_string(nu) + ")");
    }
  } else if (std::abs(p.n - p.m) > kFitTolerance * std::max(1.0, p.m)) {
    throw DecompositionError("lossless fit requires equal local variances");
  }
  fit.eta = eta;
  fit.thermal_nu = std::max(1.0, nu);
  return fit;
}

ExtendedState purify(const CovarianceMatrix& v) {
  const StandardFormDecomposition sf = standard_form_decomposition(v);
  const ChannelFit fit = fit_channel(sf.params);
  const Eigen::MatrixXd x = extended_standard(fit);
  Eigen::MatrixXd l = Eigen::MatrixXd::Identity(8, 8);
  l.topLeftCorner<4, 4>() = sf.local;
  Eigen::MatrixXd out = l * x * l.transpose();
  return {0.5 * (out + out.transpose())};
}

double squashed_upper_bound(const CovarianceMatrix& v) {
  const StandardFormParams p = standard_form(v);
  const ChannelFit fit = fit_channel(p);
  if (fit.eta == 0.0 || std::abs(0.5 * (p.c1 - p.c2)) == 0.0) return 0.0;

  // Modes: A, B, E1, E2, vacuum ancilla; squash E1 on a balanced beamsplitter.
  Eigen::MatrixXd x = Eigen::MatrixXd::Identity(10, 10);
  x.topLeftCorner<8, 8>() = extended_standard(fit);
  const Eigen::MatrixXd bs = embed_two_mode(beamsplitter(0.5), 5, 2, 4);
  const Eigen::MatrixXd s = bs * x * bs.transpose();

  auto entropy = [&](std::initializer_list<int> modes) {
    const std::vector<int> idx(modes);
    return vn_entropy(Eigen::MatrixXd(reduce_to_modes(s, idx)));
  };
  const double value = 0.5 * (entropy({0, 2}) + entropy({1, 2}) - entropy({2}) - entropy({0, 1, 2}));
  return std::max(0.0, value);
}

}  // namespace gaussent
