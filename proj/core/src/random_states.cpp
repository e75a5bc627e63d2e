#include <cmath>
#include <numbers>

#include "gaussent/covariance.hpp"
#include "gaussent/rng.hpp"

namespace gaussent {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

Matrix2 random_local(Rng& rng, double max_squeeze) {
  return rotation(rng.uniform(0.0, kTwoPi)) * single_mode_squeezer(rng.uniform(-max_squeeze, max_squeeze)) *
         rotation(rng.uniform(0.0, kTwoPi));
}

Matrix4 random_symplectic(Rng& rng) {
  const Matrix4 l1 = local_symplectic(random_local(rng, 0.6), random_local(rng, 0.6));
  const Matrix4 l2 = local_symplectic(random_local(rng, 0.6), random_local(rng, 0.6));
  return l2 * beamsplitter(rng.uniform()) * two_mode_squeezer(rng.uniform(0.0, 1.2)) * l1;
}

Matrix4 random_rotations(Rng& rng) {
  return local_symplectic(rotation(rng.uniform(0.0, kTwoPi)), rotation(rng.uniform(0.0, kTwoPi)));
}

}  // namespace

RandomStateSample random_williamson_state(std::uint64_t seed) {
  Rng rng(derive_seed(seed, 0x5741));
  const double nu1 = rng.uniform(1.0, 5.0);
  const double nu2 = rng.uniform(1.0, 5.0);
  const Matrix4 s = random_symplectic(rng);
  Matrix4 d = Matrix4::Zero();
  d(0, 0) = d(1, 1) = nu1;
  d(2, 2) = d(3, 3) = nu2;
  return {CovarianceMatrix(d).transformed(s), nu1, nu2, s};
}

CovarianceMatrix random_physical_state(std::uint64_t seed) {
  return random_williamson_state(seed).state;
}

CovarianceMatrix random_pure_state(std::uint64_t seed) {
  Rng rng(derive_seed(seed, 0x9075));
  return CovarianceMatrix().transformed(random_symplectic(rng));
}

CovarianceMatrix random_symmetric_state(std::uint64_t seed) {
  Rng rng(derive_seed(seed, 0x5953));
  const double nu = rng.uniform(1.0, 4.0);
  const double r = rng.uniform(0.0, 1.5);
  const CovarianceMatrix v(nu * tmss(r).entries());
  return v.transformed(random_rotations(rng));
}

CovarianceMatrix random_quadrature_symmetric_state(std::uint64_t seed, bool standard) {
  Rng rng(derive_seed(seed, 0x5153));
  // Lossy, noisy TMSV: every such state is quadrature-symmetric, and the family
  // covers both entangled and separable states.
  const double r = rng.uniform(0.0, 1.5);
  const double eta = rng.uniform(0.02, 1.0);
  const double eps_a = rng.uniform(0.0, 0.8);
  const double eps_b = rng.uniform(0.0, 0.8);
  Matrix4 v = loss_channel(tmss(r), eta, Mode::B).entries();
  v.topLeftCorner<2, 2>() += eps_a * Matrix2::Identity();
  v.bottomRightCorner<2, 2>() += eps_b * Matrix2::Identity();
  const CovarianceMatrix out(v);
  return standard ? out : out.transformed(random_rotations(rng));
}

}  // namespace gaussent
