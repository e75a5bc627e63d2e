#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "gaussent/covariance.hpp"
#include "gaussent/errors.hpp"
#include "gaussent/fock.hpp"
#include "gaussent/gree.hpp"
#include "gaussent/measures.hpp"
#include "oracles.hpp"

using namespace gaussent;

namespace {

CovarianceMatrix diag_state(double a, double b) {
  Matrix4 m = Matrix4::Zero();
  m.diagonal() << a, a, b, b;
  return CovarianceMatrix(m);
}

// E_V(tmss(1)) from the Schmidt series, frozen.
constexpr double kEntropyTmssOne = 1.6198220929;

}  // namespace

TEST(VnEntropy, PureStatesAreZero) {
  EXPECT_EQ(vn_entropy(CovarianceMatrix()), 0.0);
  for (double r : {0.2, 1.0, 2.5}) EXPECT_NEAR(vn_entropy(tmss(r)), 0.0, 1e-9);
}

TEST(VnEntropy, ThermalModeMatchesPhotonSeries) {
  EXPECT_NEAR(vn_entropy(diag_state(3.0, 1.0)), 2.0 * std::log(2.0), 1e-12);
  EXPECT_NEAR(vn_entropy(diag_state(3.0, 1.0)), oracle::thermal_entropy_series(3.0), 1e-10);
  for (double nu : {1.5, 2.0, 7.0}) {
    EXPECT_NEAR(entropy_kernel(nu), oracle::thermal_entropy_series(nu), 1e-9) << nu;
  }
}

TEST(VnEntropy, RejectsUnphysical) {
  EXPECT_THROW(vn_entropy(CovarianceMatrix(0.9 * Matrix4::Identity())), DomainError);
  EXPECT_EQ(entropy_kernel(1.0 - 5e-10), 0.0);
}

TEST(VnEntropy, MatchesNumericOracleOnRandomStates) {
  for (std::uint64_t s = 0; s < 100; ++s) {
    const CovarianceMatrix v = random_physical_state(s);
    EXPECT_NEAR(vn_entropy(v), oracle::entropy(v.entries()), 1e-8) << s;
  }
}

TEST(EntanglementEntropy, TmssClosedFormAndSchmidtSeries) {
  for (double r : {0.1, 0.5, 1.0, 2.0}) {
    EXPECT_NEAR(entanglement_entropy(tmss(r)), tmss_entanglement_entropy(r), 1e-9) << r;
    EXPECT_NEAR(tmss_entanglement_entropy(r), oracle::schmidt_entropy(r), 1e-9) << r;
  }
  EXPECT_NEAR(oracle::schmidt_entropy(1.0), kEntropyTmssOne, 1e-9);
  EXPECT_NEAR(tmss_entanglement_entropy(1.0), kEntropyTmssOne, 1e-9);
}

TEST(EntanglementEntropy, VacuumAndPurityCheck) {
  EXPECT_EQ(entanglement_entropy(CovarianceMatrix()), 0.0);
  EXPECT_THROW(entanglement_entropy(loss_channel(tmss(0.5), 0.5, Mode::B)), PurityError);
  for (std::uint64_t s = 0; s < 20; ++s) {
    const CovarianceMatrix v = random_pure_state(s);
    Matrix4 swap = Matrix4::Zero();
    swap.topRightCorner<2, 2>().setIdentity();
    swap.bottomLeftCorner<2, 2>().setIdentity();
    EXPECT_NEAR(entanglement_entropy(v), entanglement_entropy(v.transformed(swap)), 1e-9);
  }
}

TEST(LogNegativity, Examples) {
  for (double r : {0.1, 0.5, 1.0}) EXPECT_NEAR(log_negativity(tmss(r)), 2.0 * r, 1e-12);
  EXPECT_EQ(log_negativity(diag_state(2.0, 3.0)), 0.0);
  const double ln = log_negativity(loss_channel(tmss(1.0), 0.5, Mode::B));
  EXPECT_GT(ln, 0.0);
  EXPECT_LT(ln, 2.0);
  const double nu = oracle::symplectic_spectrum(oracle::partial_transpose(oracle::lossy_tmsv(1.0, 0.5))).back();
  EXPECT_NEAR(ln, -std::log(nu), 1e-10);
}

TEST(PptSeparable, Examples) {
  EXPECT_TRUE(ppt_separable(tmss(0.0)));
  EXPECT_FALSE(ppt_separable(tmss(0.1)));
  EXPECT_TRUE(ppt_separable(loss_channel(tmss(1.0), 0.0, Mode::B)));
}

TEST(Eof, TmssGivesItsSqueezing) {
  for (double r : {0.2, 0.6, 1.3}) {
    const EofResult e = eof_quadrature_symmetric(tmss(r));
    EXPECT_NEAR(e.r0, r, 1e-9) << r;
    EXPECT_NEAR(e.eof_nats, tmss_entanglement_entropy(r), 1e-9) << r;
    EXPECT_TRUE(e.exact);
  }
}

TEST(Eof, SeparableIsZero) {
  const EofResult e = eof_quadrature_symmetric(diag_state(2.0, 3.0));
  EXPECT_EQ(e.r0, 0.0);
  EXPECT_EQ(e.eof_nats, 0.0);
}

TEST(Eof, SymmetricMixedStateSaturatesConservation) {
  const CovarianceMatrix v = quadrature_symmetric_state(3.0, 3.0, 2.5);
  EXPECT_NEAR(std::exp(-2.0 * eof_quadrature_symmetric(v).r0), pt_spectrum(v).nu_minus, 1e-9);
}

TEST(Eof, GeneralStatesAreFlagged) {
  const StandardFormParams p = StandardFormParams::from_entries(3.0, 2.0, 1.2, -0.8);
  EXPECT_FALSE(eof_quadrature_symmetric(p).exact);
  EXPECT_TRUE(eof_quadrature_symmetric(quadrature_symmetric_state(3.0, 2.0, 1.0)).exact);
}

TEST(Eof, FormulaConsistency) {
  for (std::uint64_t s = 0; s < 100; ++s) {
    const EofResult e = eof_quadrature_symmetric(random_quadrature_symmetric_state(s));
    const double c2 = std::cosh(e.r0) * std::cosh(e.r0);
    const double s2 = std::sinh(e.r0) * std::sinh(e.r0);
    const double expected = e.r0 == 0.0 ? 0.0 : c2 * std::log(c2) - s2 * std::log(s2);
    EXPECT_NEAR(e.eof_nats, expected, 1e-10);
    EXPECT_EQ(e.eof_nats == 0.0, e.r0 == 0.0);
  }
}

TEST(ConservationOfSqueezing, RandomPhysicalStates) {
  int violations = 0;
  for (std::uint64_t s = 0; s < 1000; ++s) {
    const CovarianceMatrix v = random_physical_state(s);
    const double lhs = pt_spectrum(v).nu_minus;
    const double rhs = std::exp(-2.0 * eof_quadrature_symmetric(v).r0);
    if (lhs < rhs - 1e-9) ++violations;
  }
  EXPECT_EQ(violations, 0);
}

TEST(ConservationOfSqueezing, EqualityForSymmetricStates) {
  for (std::uint64_t s = 0; s < 100; ++s) {
    const CovarianceMatrix v = random_symmetric_state(s);
    const double nu = pt_spectrum(v).nu_minus;
    EXPECT_NEAR(nu, max_extractable_squeezing(v).min_variance, 1e-9) << s;
    // r0 is clamped to zero for separable states.
    if (nu < 1.0) EXPECT_NEAR(nu, std::exp(-2.0 * eof_quadrature_symmetric(v).r0), 1e-9) << s;
  }
}

TEST(ExtractableSqueezing, Examples) {
  const ExtractableSqueezing t = max_extractable_squeezing(tmss(0.7));
  EXPECT_NEAR(t.min_variance, std::exp(-1.4), 1e-9);
  EXPECT_NEAR(t.transmissivity, 0.5, 1e-6);
  EXPECT_NEAR(max_extractable_squeezing(CovarianceMatrix()).min_variance, 1.0, 1e-12);
  const CovarianceMatrix lossy = loss_channel(tmss(0.8), 0.6, Mode::B);
  const ExtractableSqueezing l = max_extractable_squeezing(lossy);
  EXPECT_NEAR(l.min_variance, pt_spectrum(lossy).nu_minus, 1e-6);
  EXPECT_GT(std::abs(l.transmissivity - 0.5), 1e-3);
}

TEST(ExtractableSqueezing, EqualsPtEigenvalueOnSymmetricFamily) {
  for (std::uint64_t s = 0; s < 50; ++s) {
    const CovarianceMatrix v = random_quadrature_symmetric_state(s);
    EXPECT_NEAR(max_extractable_squeezing(v).min_variance, pt_spectrum(v).nu_minus, 1e-6) << s;
  }
}

TEST(ExtractableSqueezing, RejectsAsymmetricState) {
  EXPECT_THROW(max_extractable_squeezing(StandardFormParams::from_entries(3.0, 2.0, 1.2, -0.8).matrix()),
               SymmetryError);
}

TEST(Duan, Examples) {
  for (double r : {0.2, 0.9}) EXPECT_NEAR(duan_sum(tmss(r)), 2.0 * std::exp(-2.0 * r), 1e-8);
  EXPECT_NEAR(duan_sum(CovarianceMatrix()), 2.0, 1e-8);
  EXPECT_GE(duan_sum(diag_state(2.0, 2.0)), 2.0 - 1e-8);
}

TEST(Duan, BelowTwoImpliesEntangled) {
  for (std::uint64_t s = 0; s < 500; ++s) {
    const CovarianceMatrix v = random_physical_state(s);
    if (duan_sum(v) < 2.0) EXPECT_FALSE(ppt_separable(v)) << s;
  }
}

TEST(Reid, TmssBothWays) {
  for (double r : {0.3, 1.0}) {
    const SteeringResult st = reid_steering(tmss(r));
    const double expected = 1.0 / (std::cosh(2 * r) * std::cosh(2 * r));
    EXPECT_NEAR(st.forward_product, expected, 1e-12);
    EXPECT_NEAR(st.reverse_product, expected, 1e-12);
  }
}

TEST(Reid, HalfLossKillsReverseSteering) {
  for (double r : {0.2, 0.8, 1.5, 3.0}) {
    const SteeringResult st = reid_steering(loss_channel(tmss(r), 0.5, Mode::B));
    EXPECT_NEAR(st.reverse_product, 1.0, 1e-9) << r;
    EXPECT_LT(st.forward_product, 1.0) << r;
  }
}

TEST(Reid, VacuumAndOracle) {
  const SteeringResult vac = reid_steering(CovarianceMatrix());
  EXPECT_DOUBLE_EQ(vac.forward_product, 1.0);
  EXPECT_DOUBLE_EQ(vac.reverse_product, 1.0);
  for (std::uint64_t s = 0; s < 50; ++s) {
    const Matrix4 v = standard_form(random_physical_state(s)).matrix().entries();
    const SteeringResult st = reid_steering(CovarianceMatrix(v));
    EXPECT_NEAR(st.forward_product, oracle::conditional_variance(v, 2, 0) * oracle::conditional_variance(v, 3, 1),
                1e-9 * v(2, 2) * v(2, 2));
    EXPECT_NEAR(st.reverse_product, oracle::conditional_variance(v, 0, 2) * oracle::conditional_variance(v, 1, 3),
                1e-9 * v(0, 0) * v(0, 0));
  }
}

TEST(CoherentInformation, PureStatesGiveEntanglementEntropy) {
  for (double r : {0.3, 1.0}) {
    EXPECT_NEAR(coherent_information(tmss(r)), tmss_entanglement_entropy(r), 1e-9);
    EXPECT_NEAR(reverse_coherent_information(tmss(r)), tmss_entanglement_entropy(r), 1e-9);
  }
}

TEST(CoherentInformation, UncorrelatedMixedStatesAreNegative) {
  const CovarianceMatrix v = diag_state(3.0, 5.0);
  EXPECT_LT(coherent_information(v), 0.0);
  EXPECT_LT(reverse_coherent_information(v), 0.0);
}

TEST(CoherentInformation, LossyTmssAgainstFockOracle) {
  const CovarianceMatrix v = loss_channel(tmss(1.0), 0.5, Mode::B);
  const FockStateMatrix rho = fock_lossy_tmsv(1.0, 0.5, 40);
  const double s_ab = fock_entropy(rho);
  const double s_a = fock_reduced_entropy_a(rho);
  // Lossy mode B has the thermal photon distribution of variance n.
  const double s_b = oracle::thermal_entropy_series(standard_form(v).n);
  EXPECT_NEAR(reverse_coherent_information(v), s_a - s_ab, 1e-4);
  EXPECT_NEAR(coherent_information(v), s_b - s_ab, 1e-4);
  EXPECT_GT(reverse_coherent_information(v), 0.0);
}

TEST(Separability, PptLogNegAndSqueezingAgree) {
  for (std::uint64_t s = 0; s < 500; ++s) {
    const CovarianceMatrix v = random_quadrature_symmetric_state(s);
    const bool sep = ppt_separable(v);
    EXPECT_EQ(sep, log_negativity(v) < 1e-9) << s;
    EXPECT_EQ(sep, eof_quadrature_symmetric(v).r0 < 1e-9) << s;
  }
  for (std::uint64_t s = 0; s < 500; ++s) {
    const CovarianceMatrix v = random_physical_state(s);
    EXPECT_EQ(ppt_separable(v), log_negativity(v) < 1e-9) << s;
  }
}

TEST(LocalRotations, MeasuresAreInvariant) {
  for (std::uint64_t s = 0; s < 100; ++s) {
    const CovarianceMatrix v = random_physical_state(s);
    const CovarianceMatrix w =
        v.transformed(oracle::local(oracle::rotation(0.7 * s + 0.2), oracle::rotation(1.9 * s + 0.4)));
    EXPECT_NEAR(log_negativity(v), log_negativity(w), 1e-8);
    EXPECT_NEAR(eof_quadrature_symmetric(v).eof_nats, eof_quadrature_symmetric(w).eof_nats, 1e-8);
    EXPECT_NEAR(vn_entropy(v), vn_entropy(w), 1e-8);
    EXPECT_NEAR(coherent_information(v), coherent_information(w), 1e-8);
    EXPECT_NEAR(reverse_coherent_information(v), reverse_coherent_information(w), 1e-8);
    EXPECT_NEAR(duan_sum(v), duan_sum(w), 1e-8);
  }
}

TEST(Ordering, ChainOnRandomQuadratureSymmetricStates) {
  int checked = 0;
  for (std::uint64_t s = 0; checked < 500; ++s) {
    const CovarianceMatrix v = random_quadrature_symmetric_state(s);
    if (ppt_separable(v)) continue;
    ++checked;
    const double hashing = std::max(coherent_information(v), reverse_coherent_information(v));
    const double ree = gree(v).gree_nats;
    EXPECT_LE(hashing, ree + 1e-6) << s;
    EXPECT_LE(ree, eof_quadrature_symmetric(v).eof_nats + 1e-6) << s;
    EXPECT_LE(hashing, log_negativity(v) + 1e-6) << s;
  }
}
