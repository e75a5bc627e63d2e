#include "gaussent/estimate.hpp"

#include <cmath>
#include <string>
#include <vector>

#include "gaussent/errors.hpp"

namespace gaussent {
namespace {

constexpr double kMinEffectiveShots = 100.0;

// Weighted central moments of (alice, bob_x, bob_p) over a subset of records.
struct Moments {
  Eigen::Matrix3d cov = Eigen::Matrix3d::Zero();
  Eigen::Matrix3d fourth = Eigen::Matrix3d::Zero();
  double sum_w = 0.0;
  double sum_w2 = 0.0;

  double effective() const { return sum_w2 > 0.0 ? sum_w * sum_w / sum_w2 : 0.0; }
  double standard_error(int i, int j) const {
    const double n = effective();
    return n > 0.0 ? std::sqrt(std::max(0.0, fourth(i, j) - cov(i, j) * cov(i, j)) / n) : 0.0;
  }
};

template <class Keep>
Moments moments(std::span<const ShotRecord> records, std::span<const double> weights, Keep keep) {
  auto weight = [&](std::size_t i) { return weights.empty() ? 1.0 : weights[i]; };
  // Shifted by the first kept record so constant data give exactly zero moments.
  Eigen::Vector3d shift = Eigen::Vector3d::Zero();
  for (const ShotRecord& s : records) {
    if (keep(s)) {
      shift = Eigen::Vector3d(s.alice_outcome, s.bob_x, s.bob_p);
      break;
    }
  }
  auto row = [&](const ShotRecord& s) -> Eigen::Vector3d {
    return Eigen::Vector3d(s.alice_outcome, s.bob_x, s.bob_p) - shift;
  };
  Moments m;
  Eigen::Vector3d mean = Eigen::Vector3d::Zero();
  for (std::size_t i = 0; i < records.size(); ++i) {
    if (!keep(records[i])) continue;
    const double w = weight(i);
    m.sum_w += w;
    m.sum_w2 += w * w;
    mean += w * row(records[i]);
  }
  if (!(m.sum_w > 0.0)) return m;
  mean /= m.sum_w;
  for (std::size_t i = 0; i < records.size(); ++i) {
    if (!keep(records[i])) continue;
    const double w = weight(i);
    if (w == 0.0) continue;
    const Eigen::Vector3d d = row(records[i]) - mean;
    m.cov += w * d * d.transpose();
    const Eigen::Vector3d d2 = d.cwiseProduct(d);
    m.fourth += w * d2 * d2.transpose();
  }
  m.cov /= m.sum_w;
  m.fourth /= m.sum_w;
  return m;
}

}  // namespace

CovEstimate estimate_covariance(std::span<const ShotRecord> records, std::span<const double> weights) {
  if (!weights.empty() && weights.size() != records.size()) {
    throw DomainError("weights must match the number of records");
  }
  for (double w : weights) {
    if (!(w >= 0.0) || !std::isfinite(w)) throw DomainError("weights must be finite and non-negative");
  }
  const Moments all = moments(records, weights, [](const ShotRecord&) { return true; });
  const Moments xs = moments(records, weights, [](const ShotRecord& s) { return s.alice_basis == AliceBasis::X; });
  const Moments ps = moments(records, weights, [](const ShotRecord& s) { return s.alice_basis == AliceBasis::P; });

  if (all.effective() < kMinEffectiveShots) {
    throw InsufficientDataError("need at least 100 effective shots, have " + std::to_string(all.effective()));
  }
  if (xs.effective() < 2.0 || ps.effective() < 2.0) {
    throw InsufficientDataError("both Alice bases need at least two shots");
  }
  if (!(all.cov(1, 1) > 0.0) || !(all.cov(2, 2) > 0.0) || !(xs.cov(0, 0) > 0.0) || !(ps.cov(0, 0) > 0.0)) {
    throw DegenerateStateError("a measured channel has zero variance");
  }

  const double root2 = std::sqrt(2.0);
  CovEstimate e{};
  e.n_shots = records.size();
  e.effective_shots = all.effective();
  Matrix4& v = e.covariance;
  Matrix4& se = e.standard_error;
  v.setZero();
  se.setZero();

  v(0, 0) = xs.cov(0, 0);
  se(0, 0) = xs.standard_error(0, 0);
  v(1, 1) = ps.cov(0, 0);
  se(1, 1) = ps.standard_error(0, 0);

  v(2, 2) = 2.0 * all.cov(1, 1) - 1.0;
  se(2, 2) = 2.0 * all.standard_error(1, 1);
  v(3, 3) = 2.0 * all.cov(2, 2) - 1.0;
  se(3, 3) = 2.0 * all.standard_error(2, 2);
  v(2, 3) = v(3, 2) = 2.0 * all.cov(1, 2);
  se(2, 3) = se(3, 2) = 2.0 * all.standard_error(1, 2);

  v(0, 2) = v(2, 0) = root2 * xs.cov(0, 1);
  se(0, 2) = se(2, 0) = root2 * xs.standard_error(0, 1);
  v(0, 3) = v(3, 0) = root2 * xs.cov(0, 2);
  se(0, 3) = se(3, 0) = root2 * xs.standard_error(0, 2);
  v(1, 2) = v(2, 1) = root2 * ps.cov(0, 1);
  se(1, 2) = se(2, 1) = root2 * ps.standard_error(0, 1);
  v(1, 3) = v(3, 1) = root2 * ps.cov(0, 2);
  se(1, 3) = se(3, 1) = root2 * ps.standard_error(0, 2);
  return e;
}

}  // namespace gaussent
