#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "gaussent/covariance.hpp"
#include "gaussent/errors.hpp"
#include "gaussent/gree.hpp"
#include "gaussent/measures.hpp"
#include "gaussent/squashed.hpp"
#include "gaussent/symplectic.hpp"

using namespace gaussent;

TEST(Symmetrize, LeavesSymmetricStatesAlone) {
  const CovarianceMatrix v = quadrature_symmetric_state(3.0, 2.0, 1.5);
  EXPECT_LT((symmetrize(v).entries() - v.entries()).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(Symmetrize, AveragesCorrelationMagnitudes) {
  const StandardFormParams p = standard_form(symmetrize(StandardFormParams::from_entries(3, 2, 1.2, -1.0).matrix()));
  EXPECT_NEAR(p.m, 3.0, 1e-12);
  EXPECT_NEAR(p.n, 2.0, 1e-12);
  EXPECT_NEAR(p.c1, 1.1, 1e-12);
  EXPECT_NEAR(p.c2, -1.1, 1e-12);
}

TEST(Symmetrize, ProducesQuadratureSymmetricPhysicalStates) {
  for (std::uint64_t s = 0; s < 200; ++s) {
    const CovarianceMatrix out = symmetrize(random_physical_state(s));
    const StandardFormParams p = standard_form(out);
    EXPECT_LT(std::abs(p.c1 + p.c2), 1e-12 * std::max(1.0, p.m)) << s;
    EXPECT_TRUE(validate_physical(out)) << s;
  }
}

TEST(Purification, PureAndMarginalConsistent) {
  for (std::uint64_t s = 0; s < 50; ++s) {
    const CovarianceMatrix v = random_quadrature_symmetric_state(s);
    const ExtendedState ext = purify(v);
    const Eigen::VectorXd nu = symplectic_spectrum(ext.covariance);
    EXPECT_LT((nu.array() - 1.0).abs().maxCoeff(), 1e-8) << s;
    EXPECT_LT((ext.covariance.topLeftCorner<4, 4>() - v.entries()).cwiseAbs().maxCoeff(), 1e-10) << s;
  }
}

TEST(ChannelFit, LossyTmssRecoversParameters) {
  const ChannelFit fit = fit_channel(standard_form(loss_channel(tmss(0.7), 0.35, Mode::B)));
  EXPECT_NEAR(fit.r, 0.7, 1e-10);
  EXPECT_NEAR(fit.eta, 0.35, 1e-10);
  EXPECT_NEAR(fit.thermal_nu, 1.0, 1e-10);
}

TEST(ChannelFit, RejectsStatesOutsideTheFamily) {
  // Bob noisier than Alice with weak correlations would need eta > 1 or sub-vacuum input.
  EXPECT_THROW(fit_channel(StandardFormParams::from_entries(1.5, 1.0, 0.4, -0.4)), DecompositionError);
}

TEST(SquashedBound, PureStateGivesEntanglementEntropy) {
  for (double r : {0.3, 0.6, 1.0}) {
    EXPECT_NEAR(squashed_upper_bound(tmss(r)), tmss_entanglement_entropy(r), 1e-6) << r;
  }
}

TEST(SquashedBound, ProductStateIsZero) {
  Matrix4 m = Matrix4::Zero();
  m.diagonal() << 2, 2, 3, 3;
  EXPECT_NEAR(squashed_upper_bound(CovarianceMatrix(m)), 0.0, 1e-8);
}

TEST(SquashedBound, HighLossSitsBetweenGreeAndEof) {
  const CovarianceMatrix v = loss_channel(tmss(1.0), 0.1, Mode::B);
  const double sq = squashed_upper_bound(v);
  EXPECT_GE(sq, gree(v).gree_nats - 1e-5);
  EXPECT_LE(sq, eof_quadrature_symmetric(v).eof_nats + 1e-5);
}

TEST(SquashedBound, RequiresQuadratureSymmetry) {
  EXPECT_THROW(squashed_upper_bound(StandardFormParams::from_entries(3, 2, 1.2, -0.8).matrix()), SymmetryError);
}

TEST(SquashedBound, AboveHashingBoundOnLossyFamily) {
  for (double r : {0.3, 0.8, 1.4}) {
    for (int k = 1; k <= 10; ++k) {
      const CovarianceMatrix v = loss_channel(tmss(r), 0.1 * k, Mode::B);
      const double hashing = std::max(coherent_information(v), reverse_coherent_information(v));
      EXPECT_GE(squashed_upper_bound(v), hashing - 1e-6) << r << " " << k;
    }
  }
}

TEST(SquashedBound, MonotoneInLoss) {
  for (double r : {0.5, 1.0}) {
    double prev = -1.0;
    for (int k = 0; k <= 20; ++k) {
      const double b = squashed_upper_bound(loss_channel(tmss(r), k / 20.0, Mode::B));
      EXPECT_GE(b, prev - 1e-12) << r << " " << k;
      prev = b;
    }
  }
}
