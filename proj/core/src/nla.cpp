#include "gaussent/nla.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "gaussent/errors.hpp"
#include "gaussent/estimate.hpp"
#include "gaussent/parallel.hpp"
#include "gaussent/rng.hpp"

namespace gaussent {
namespace {

using Matrix22 = Eigen::Matrix2d;

constexpr std::size_t kMinRecords = 10000;
constexpr std::size_t kMinAccepted = 100;

double filter_rate(double gain) { return 1.0 - 1.0 / (gain * gain); }

// Joint covariance of (x_A, p_A, x_h, p_h) under the heterodyne convention.
Matrix4 heterodyne_joint(const Matrix4& v) {
  Matrix4 s = v;
  const double root2 = std::sqrt(2.0);
  s.topRightCorner<2, 2>() = v.topRightCorner<2, 2>() / root2;
  s.bottomLeftCorner<2, 2>() = s.topRightCorner<2, 2>().transpose();
  s.bottomRightCorner<2, 2>() = (v.bottomRightCorner<2, 2>() + Matrix22::Identity()) / 2.0;
  return s;
}

// Inverse of heterodyne_joint.
Matrix4 state_from_joint(const Matrix4& s) {
  Matrix4 v = s;
  const double root2 = std::sqrt(2.0);
  v.topRightCorner<2, 2>() = root2 * s.topRightCorner<2, 2>();
  v.bottomLeftCorner<2, 2>() = v.topRightCorner<2, 2>().transpose();
  v.bottomRightCorner<2, 2>() = 2.0 * s.bottomRightCorner<2, 2>() - Matrix22::Identity();
  return 0.5 * (v + v.transpose());
}

// Joint covariance after rescaling h -> h/g.
Matrix4 rescale_joint(Matrix4 s, double gain) {
  s.topRightCorner<2, 2>() /= gain;
  s.bottomLeftCorner<2, 2>() /= gain;
  s.bottomRightCorner<2, 2>() /= gain * gain;
  return s;
}

// (1 - e^{-x})/x.
double phi1(double x) { return std::abs(x) < 1e-12 ? 1.0 - 0.5 * x : -std::expm1(-x) / x; }

// 2 (1 - e^{-x}(1 + x)) / x^2.
double phi3(double x) {
  if (std::abs(x) < 1e-2) {
    // 2 sum_{k>=2} (-1)^k (k-1) x^{k-2} / k!
    double sum = 0.0;
    double power = 1.0;
    double fact = 2.0;
    for (int k = 2; k < 12; ++k) {
      sum += power * (k - 1) / fact;
      power *= -x;
      fact *= k + 1;
    }
    return 2.0 * sum;
  }
  return 2.0 * (-std::expm1(-x) - x * std::exp(-x)) / (x * x);
}

template <class F>
double integrate_angle(F f, const char* what) {
  double error = 0.0;
  double l1 = 0.0;
  const double value = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(
      f, 0.0, 2.0 * std::numbers::pi, 15, 1e-10, &error, &l1);
  if (!std::isfinite(value) || error > 1e-6 * std::max(l1, 1e-300)) {
    throw NumericError(std::string("angular quadrature did not converge for ") + what);
  }
  return value;
}

struct HeterodyneRadial {
  Matrix22 precision;
  double norm;     // 1 / (2 pi sqrt(det Sigma_hh))
  double kappa;
  double radius;   // sqrt(2) alpha_c
  double inner;    // e^{-kappa alpha_c^2}

  HeterodyneRadial(const Matrix22& sigma_hh, const FilterParams& fp)
      : precision(sigma_hh.inverse()),
        norm(1.0 / (2.0 * std::numbers::pi * std::sqrt(sigma_hh.determinant()))),
        kappa(filter_rate(fp.gain)),
        radius(std::sqrt(2.0) * fp.cutoff),
        inner(std::exp(-kappa * fp.cutoff * fp.cutoff)) {}

  double q(double theta) const {
    const Eigen::Vector2d u(std::cos(theta), std::sin(theta));
    return u.dot(precision * u);
  }

  // Weighted radial integral of rho.
  double zeroth(double theta) const {
    const double qq = q(theta);
    const double t = 0.5 * radius * radius;
    double in = 0.0;
    if (t > 0.0) in = inner * t * phi1((qq - kappa) * t);
    return in + std::exp(-qq * t) / qq;
  }

  // Weighted radial integral of rho^3.
  double second(double theta) const {
    const double qq = q(theta);
    const double t = 0.5 * radius * radius;
    double in = 0.0;
    if (t > 0.0) in = inner * t * t * phi3((qq - kappa) * t);
    const double xq = qq * t;
    return in + 2.0 / (qq * qq) * std::exp(-xq) * (1.0 + xq);
  }
};

bool is_physical_matrix(const Matrix4& v, double tolerance = 0.0) {
  Eigen::LLT<Matrix4> llt(v);
  if (llt.info() != Eigen::Success) return false;
  return symplectic_eigenvalues(CovarianceMatrix(v)).nu_minus >= 1.0 - tolerance;
}

}  // namespace

void FilterParams::validate() const {
  if (!std::isfinite(gain) || gain < 1.0) throw DomainError("gain must be a finite number >= 1");
  if (!std::isfinite(cutoff) || cutoff < 0.0) throw DomainError("cutoff must be a finite number >= 0");
}

std::string_view to_string(EffectiveMethod m) {
  switch (m) {
    case EffectiveMethod::AnalyticInfiniteCutoff:
      return "analytic-infinite-cutoff";
    case EffectiveMethod::NumericFiniteCutoff:
      return "numeric-finite-cutoff";
    case EffectiveMethod::MonteCarlo:
      return "monte-carlo";
  }
  return "unknown";
}

double acceptance_probability(std::complex<double> alpha, const FilterParams& fp) {
  const double a2 = std::norm(alpha);
  const double c2 = fp.cutoff * fp.cutoff;
  if (a2 >= c2) return 1.0;
  return std::exp(filter_rate(fp.gain) * (a2 - c2));
}

CovarianceMatrix ideal_nla_state(const CovarianceMatrix& v, double gain) {
  FilterParams{gain, 0.0}.validate();
  if (gain == 1.0) return v;
  const Matrix4 sigma = heterodyne_joint(v.entries());
  Matrix4 precision = sigma.inverse();
  const double kappa = filter_rate(gain);
  precision(2, 2) -= kappa;
  precision(3, 3) -= kappa;
  Eigen::LLT<Matrix4> llt(precision);
  if (llt.info() != Eigen::Success || llt.matrixL().toDenseMatrix().diagonal().minCoeff() <= 1e-12) {
    throw DivergenceError("amplifier weight is not integrable: gain too large for this state");
  }
  const Matrix4 weighted = llt.solve(Matrix4::Identity());
  return CovarianceMatrix(state_from_joint(rescale_joint(0.5 * (weighted + weighted.transpose()), gain)));
}

double success_probability(const CovarianceMatrix& v, const FilterParams& fp) {
  fp.validate();
  if (fp.gain == 1.0 || fp.cutoff == 0.0) return 1.0;
  const Matrix4 sigma = heterodyne_joint(v.entries());
  const HeterodyneRadial radial(sigma.bottomRightCorner<2, 2>(), fp);
  const double p = radial.norm * integrate_angle([&](double t) { return radial.zeroth(t); }, "success probability");
  return std::clamp(p, 0.0, 1.0);
}

EffectiveState finite_cutoff_nla_state(const CovarianceMatrix& v, const FilterParams& fp) {
  fp.validate();
  EffectiveState out{v, v.entries(), 0.0, 1.0, EffectiveMethod::NumericFiniteCutoff, Matrix4::Zero(), 0, 0};
  if (fp.gain == 1.0 || fp.cutoff == 0.0) {
    // Flat filter: only the rescaling acts.
    const Matrix4 s = rescale_joint(heterodyne_joint(v.entries()), fp.gain);
    out.raw_covariance = state_from_joint(s);
    const PhysicalProjection proj = nearest_physical(out.raw_covariance);
    out.covariance = proj.covariance;
    out.added_noise = proj.added_noise;
    return out;
  }
  const Matrix4 sigma = heterodyne_joint(v.entries());
  const Matrix22 s_hh = sigma.bottomRightCorner<2, 2>();
  const Matrix22 s_ah = sigma.topRightCorner<2, 2>();
  const HeterodyneRadial radial(s_hh, fp);

  const double p = radial.norm * integrate_angle([&](double t) { return radial.zeroth(t); }, "success probability");
  auto moment = [&](int i, int j) {
    return radial.norm * integrate_angle(
                             [&](double t) {
                               const Eigen::Vector2d u(std::cos(t), std::sin(t));
                               return u(i) * u(j) * radial.second(t);
                             },
                             "post-selected moments");
  };
  Matrix22 k;
  k(0, 0) = moment(0, 0);
  k(1, 1) = moment(1, 1);
  k(0, 1) = k(1, 0) = moment(0, 1);
  k /= p;

  const Matrix22 b = s_ah * radial.precision;
  const Matrix22 conditional = sigma.topLeftCorner<2, 2>() - b * s_ah.transpose();
  Matrix4 post;
  post.topLeftCorner<2, 2>() = conditional + b * k * b.transpose();
  post.topRightCorner<2, 2>() = b * k;
  post.bottomLeftCorner<2, 2>() = (b * k).transpose();
  post.bottomRightCorner<2, 2>() = k;

  out.raw_covariance = state_from_joint(rescale_joint(post, fp.gain));
  const PhysicalProjection proj = nearest_physical(out.raw_covariance);
  out.covariance = proj.covariance;
  out.added_noise = proj.added_noise;
  out.p_success = std::clamp(p, 0.0, 1.0);
  return out;
}

std::vector<ShotRecord> postselect(std::span<const ShotRecord> records, const FilterParams& fp, std::uint64_t seed) {
  fp.validate();
  std::vector<ShotRecord> accepted;
  accepted.reserve(records.size());
  for (const auto& s : records) {
    const double u = unit_double(derive_seed(seed, s.shot_id));
    if (u < acceptance_probability(heterodyne_amplitude(s), fp)) {
      ShotRecord r = s;
      r.bob_x /= fp.gain;
      r.bob_p /= fp.gain;
      accepted.push_back(r);
    }
  }
  return accepted;
}

EffectiveState mc_distill(std::span<const ShotRecord> records, const FilterParams& fp, std::uint64_t seed,
                          const McOptions& options) {
  fp.validate();
  if (records.size() < kMinRecords) {
    throw InsufficientDataError("post-selection needs at least 10000 records, have " +
                                std::to_string(records.size()));
  }
  const std::size_t chunks = (records.size() + kShotChunk - 1) / kShotChunk;
  std::vector<std::vector<ShotRecord>> parts(chunks);
  parallel_for(chunks, options.workers, [&](std::size_t c) {
    const std::size_t begin = c * kShotChunk;
    const std::size_t len = std::min(kShotChunk, records.size() - begin);
    parts[c] = postselect(records.subspan(begin, len), fp, seed);
  });
  std::vector<ShotRecord> accepted;
  for (auto& part : parts) accepted.insert(accepted.end(), part.begin(), part.end());
  return effective_from_accepted(accepted, records.size());
}

EffectiveState effective_from_accepted(std::span<const ShotRecord> accepted, std::size_t total) {
  if (accepted.size() < kMinAccepted) {
    throw StarvationError("only " + std::to_string(accepted.size()) + " of " + std::to_string(total) +
                          " shots accepted; at least 100 are needed");
  }
  const CovEstimate est = estimate_covariance(accepted);
  const PhysicalProjection proj = nearest_physical(est.covariance);
  EffectiveState out{proj.covariance,
                     est.covariance,
                     proj.added_noise,
                     static_cast<double>(accepted.size()) / static_cast<double>(total),
                     EffectiveMethod::MonteCarlo,
                     est.standard_error,
                     accepted.size(),
                     total};
  return out;
}

PhysicalProjection nearest_physical(const Matrix4& v) {
  const Matrix4 sym = 0.5 * (v + v.transpose());
  if (is_physical_matrix(sym, kPhysicalityTolerance)) return {CovarianceMatrix(sym), 0.0};
  double lo = 0.0;
  double hi = 1e-6;
  while (!is_physical_matrix(sym + hi * Matrix4::Identity())) {
    lo = hi;
    hi *= 2.0;
    if (hi > 1e6) throw PhysicalityError("covariance estimate cannot be made physical");
  }
  for (int i = 0; i < 100 && hi - lo > 1e-14 * std::max(1.0, hi); ++i) {
    const double mid = 0.5 * (lo + hi);
    (is_physical_matrix(sym + mid * Matrix4::Identity()) ? hi : lo) = mid;
  }
  return {CovarianceMatrix(sym + hi * Matrix4::Identity()), hi};
}

}  // namespace gaussent
