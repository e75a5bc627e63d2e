#include <gtest/gtest.h>

#include <cmath>
#include <sstream>
#include <vector>

#include "gaussent/bootstrap.hpp"
#include "gaussent/covariance.hpp"
#include "gaussent/errors.hpp"
#include "gaussent/estimate.hpp"
#include "gaussent/measures.hpp"
#include "gaussent/nla.hpp"
#include "gaussent/normality.hpp"
#include "gaussent/rng.hpp"
#include "gaussent/shots.hpp"

using namespace gaussent;

namespace {

CovarianceMatrix lossy(double r, double eta) { return loss_channel(tmss(r), eta, Mode::B); }

GreeOptions quick_gree() {
  GreeOptions o;
  o.starts = 2;
  o.max_starts = 2;
  return o;
}

}  // namespace

TEST(SynthShots, VacuumChannelVariances) {
  const std::size_t n = 1000000;
  const auto shots = synth_shots(CovarianceMatrix{}, n, 11);
  double ax = 0, ap = 0, bx = 0, bp = 0;
  std::size_t nx = 0;
  for (const auto& s : shots) {
    (s.alice_basis == AliceBasis::X ? ax : ap) += s.alice_outcome * s.alice_outcome;
    nx += s.alice_basis == AliceBasis::X;
    bx += s.bob_x * s.bob_x;
    bp += s.bob_p * s.bob_p;
  }
  const double np = static_cast<double>(n - nx);
  // Vacuum: Alice quadratures have variance 1; each heterodyne component (1 + 1)/2 = 1.
  // A variance estimate of a unit normal over m samples has standard error sqrt(2/m).
  EXPECT_NEAR(ax / nx, 1.0, 5.0 * std::sqrt(2.0 / nx));
  EXPECT_NEAR(ap / np, 1.0, 5.0 * std::sqrt(2.0 / np));
  EXPECT_NEAR(bx / n, 1.0, 5.0 * std::sqrt(2.0 / n));
  EXPECT_NEAR(bp / n, 1.0, 5.0 * std::sqrt(2.0 / n));
  EXPECT_NEAR(static_cast<double>(nx) / n, 0.5, 5.0 * 0.5 / std::sqrt(n));
}

TEST(SynthShots, DeterministicAndWorkerIndependent) {
  const CovarianceMatrix v = lossy(0.7, 0.4);
  const auto a = synth_shots(v, 150000, 5);
  EXPECT_EQ(a, synth_shots(v, 150000, 5));
  EXPECT_EQ(a, synth_shots(v, 150000, 5, 4));
  EXPECT_NE(a, synth_shots(v, 150000, 6));
  for (std::size_t i = 0; i < a.size(); ++i) ASSERT_EQ(a[i].shot_id, i);
}

TEST(SynthShots, RejectsNonPositiveCovariance) {
  Matrix4 m = Matrix4::Identity();
  m(0, 0) = -1.0;
  EXPECT_THROW(synth_shots(CovarianceMatrix(m), 10, 1), NumericError);
}

TEST(EstimateCovariance, RecoversTmssWithinFiveStandardErrors) {
  const auto shots = synth_shots(tmss(1.0), 1000000, 42);
  const CovEstimate est = estimate_covariance(shots);
  const Matrix4 truth = tmss(1.0).entries();
  EXPECT_EQ(est.n_shots, shots.size());
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      if (est.standard_error(i, j) == 0.0) {
        EXPECT_EQ(est.covariance(i, j), 0.0);
        continue;
      }
      EXPECT_LT(std::abs(est.covariance(i, j) - truth(i, j)), 5.0 * est.standard_error(i, j)) << i << j;
    }
  }
}

TEST(EstimateCovariance, StandardErrorScalesAsInverseRootN) {
  const CovarianceMatrix v = lossy(0.6, 0.5);
  const CovEstimate small = estimate_covariance(synth_shots(v, 100000, 1));
  const CovEstimate large = estimate_covariance(synth_shots(v, 400000, 2));
  EXPECT_NEAR(large.standard_error.norm() / small.standard_error.norm(), 0.5, 0.1);
}

TEST(EstimateCovariance, ErrorNormHalvesWhenShotsQuadruple) {
  // Averaged over seeds so the two-point ratio is not dominated by one draw.
  const CovarianceMatrix v = lossy(0.6, 0.5);
  double e1 = 0.0;
  double e4 = 0.0;
  for (std::uint64_t s = 0; s < 40; ++s) {
    e1 += (estimate_covariance(synth_shots(v, 20000, 100 + s)).covariance - v.entries()).squaredNorm();
    e4 += (estimate_covariance(synth_shots(v, 80000, 200 + s)).covariance - v.entries()).squaredNorm();
  }
  EXPECT_NEAR(std::sqrt(e4 / e1), 0.5, 0.1);
}

TEST(EstimateCovariance, DegenerateAndInsufficientInputs) {
  std::vector<ShotRecord> same(1000);
  for (std::size_t i = 0; i < same.size(); ++i) {
    same[i] = {i, i % 2 ? AliceBasis::P : AliceBasis::X, 0.3, 0.1, -0.2};
  }
  EXPECT_THROW(estimate_covariance(same), DegenerateStateError);
  const auto few = synth_shots(tmss(0.5), 99, 1);
  EXPECT_THROW(estimate_covariance(few), InsufficientDataError);
  const auto shots = synth_shots(tmss(0.5), 1000, 1);
  std::vector<double> w(999, 1.0);
  EXPECT_THROW(estimate_covariance(shots, w), DomainError);
}

TEST(EstimateCovariance, UnitWeightsMatchUnweighted) {
  const auto shots = synth_shots(lossy(0.5, 0.8), 20000, 9);
  const std::vector<double> w(shots.size(), 1.0);
  EXPECT_LT((estimate_covariance(shots, w).covariance - estimate_covariance(shots).covariance).cwiseAbs().maxCoeff(),
            1e-12);
}

TEST(JarqueBera, ExactNormalMomentsGiveZero) {
  // Three-point sample with zero mean, zero skewness and kurtosis 3: mass 1/6 at
  // +-sqrt(3) and 2/3 at 0.
  std::vector<double> xs;
  for (int i = 0; i < 1000; ++i) xs.push_back(std::sqrt(3.0));
  for (int i = 0; i < 1000; ++i) xs.push_back(-std::sqrt(3.0));
  for (int i = 0; i < 4000; ++i) xs.push_back(0.0);
  const JarqueBeraResult jb = jarque_bera(xs);
  EXPECT_NEAR(jb.statistic, 0.0, 1e-9);
  EXPECT_NEAR(jb.p_value, 1.0, 1e-9);
}

TEST(JarqueBera, RequiresThousandSamples) {
  const std::vector<double> xs(999, 1.0);
  EXPECT_THROW(jarque_bera(xs), DomainError);
}

TEST(JarqueBera, RejectsUniformSample) {
  Rng rng(4);
  std::vector<double> xs(20000);
  for (double& x : xs) x = rng.uniform();
  EXPECT_LT(jarque_bera(xs).p_value, 1e-6);
}

TEST(JarqueBera, NullRejectionRateSmallSamples) {
  int rejected = 0;
  const int runs = 400;
  for (int s = 0; s < runs; ++s) {
    Rng rng(derive_seed(77, s));
    std::vector<double> xs(100000);
    for (double& x : xs) x = rng.normal();
    rejected += jarque_bera(xs).p_value < 0.05;
  }
  // Binomial(400, 0.05): sd 4.4 rejections.
  EXPECT_NEAR(rejected, 20, 14);
}

TEST(NormalityGate, PassRateOnUnfilteredGaussianData) {
  // Four independent channels at the 5% level: the gate passes with probability 0.95^4.
  const int runs = 60;
  int passed = 0;
  for (int s = 0; s < runs; ++s) passed += normality_report(synth_shots(lossy(0.8, 0.1), 20000, 300 + s)).passes();
  const double expected = std::pow(0.95, 4);
  EXPECT_NEAR(static_cast<double>(passed) / runs, expected, 3.0 * std::sqrt(expected * (1 - expected) / runs));
}

TEST(NormalityGate, FailsUnderHeavyTruncationAtIntermediateCutoff) {
  const auto shots = synth_shots(add_noise(lossy(0.8, 0.1), 0.05), 1000000, 3);
  const auto accepted = postselect(shots, {1.6, 1.5}, 8);
  EXPECT_FALSE(normality_report(accepted).passes());
}

TEST(Bootstrap, UnitGainHasZeroSpread) {
  const auto shots = synth_shots(lossy(0.6, 0.5), 20000, 1);
  BootstrapOptions opt;
  opt.gree = quick_gree();
  const BootstrapResult b = bootstrap_errorbars(shots, {1.0, 2.0}, 3, 9, opt);
  EXPECT_EQ(b.spread.logneg, 0.0);
  EXPECT_EQ(b.spread.eof, 0.0);
  EXPECT_EQ(b.spread.rci, 0.0);
  EXPECT_EQ(b.spread.p_success, 0.0);
  EXPECT_EQ(b.n_reps, 3u);
}

TEST(Bootstrap, RequiresTwoRepetitions) {
  const auto shots = synth_shots(lossy(0.6, 0.5), 20000, 1);
  EXPECT_THROW(bootstrap_errorbars(shots, {1.2, 2.0}, 1, 9), DomainError);
}

TEST(Bootstrap, SpreadGrowsAsSuccessProbabilityFalls) {
  const auto shots = synth_shots(lossy(0.6, 0.3), 200000, 5);
  BootstrapOptions opt;
  opt.gree = quick_gree();
  double prev_spread = -1.0;
  double prev_p = 2.0;
  for (double g : {1.05, 1.25, 1.6}) {
    const BootstrapResult b = bootstrap_errorbars(shots, {g, 2.5}, 60, 17, opt);
    EXPECT_LT(b.mean.p_success, prev_p);
    EXPECT_GT(b.spread.logneg, prev_spread) << g;
    prev_p = b.mean.p_success;
    prev_spread = b.spread.logneg;
  }
}

TEST(Bootstrap, SpreadStableInRepetitionCount) {
  const auto shots = synth_shots(lossy(0.6, 0.3), 50000, 5);
  BootstrapOptions opt;
  opt.gree = quick_gree();
  opt.workers = 2;
  const BootstrapResult a = bootstrap_errorbars(shots, {1.3, 2.5}, 100, 1, opt);
  const BootstrapResult b = bootstrap_errorbars(shots, {1.3, 2.5}, 400, 2, opt);
  EXPECT_NEAR(a.spread.logneg / b.spread.logneg, 1.0, 0.3);
  EXPECT_NEAR(a.spread.rci / b.spread.rci, 1.0, 0.3);
}

TEST(Bootstrap, StarvationPropagates) {
  const auto shots = synth_shots(tmss(0.5), 20000, 1);
  EXPECT_THROW(bootstrap_errorbars(shots, {3.0, 6.0}, 2, 1), StarvationError);
}

TEST(GateSoundness, PassingStreamsMatchTheoryWithinSpread) {
  // Streams that pass the gate must sit on the ideal line within the bootstrap spread
  // widened by three standard errors of the estimate, which the spread does not include.
  const CovarianceMatrix v = lossy(0.6, 0.5);
  const FilterParams fp{1.2, 4.0};
  const CovarianceMatrix ideal = ideal_nla_state(v, fp.gain);
  BootstrapOptions opt;
  opt.gree = quick_gree();
  int passing = 0;
  for (std::uint64_t seed = 12; seed < 18; ++seed) {
    const auto shots = synth_shots(v, 1000000, seed);
    if (!normality_report(postselect(shots, fp, 3)).passes()) continue;
    ++passing;
    const BootstrapResult b = bootstrap_errorbars(shots, fp, 10, 3, opt);
    const EffectiveState st = mc_distill(shots, fp, 3);
    const double tolerance = b.spread.logneg + 3.0 * st.standard_error.maxCoeff();
    EXPECT_NEAR(log_negativity(st.covariance), log_negativity(ideal), tolerance) << seed;
  }
  EXPECT_GE(passing, 3);
}

TEST(Pipeline, DeterministicEndToEnd) {
  const CovarianceMatrix v = lossy(0.7, 0.3);
  const auto run = [&](unsigned workers) {
    const auto shots = synth_shots(v, 100000, 3, workers);
    return mc_distill(shots, {1.4, 3.0}, 4, {workers});
  };
  const EffectiveState a = run(1);
  const EffectiveState b = run(4);
  EXPECT_EQ(a.raw_covariance, b.raw_covariance);
  EXPECT_EQ(log_negativity(a.covariance), log_negativity(b.covariance));
}

TEST(ShotFile, RoundTripIsExact) {
  const auto shots = synth_shots(lossy(0.5, 0.5), 500, 7);
  std::stringstream ss;
  write_shots(ss, shots);
  EXPECT_EQ(read_shots(ss), shots);
}

TEST(ShotFile, MalformedLineReportsLineNumber) {
  std::stringstream ss;
  ss << "shot_id,alice_basis,alice_outcome,bob_x,bob_p\n0,X,0.1,0.2,0.3\n1,Q,0.1,0.2,0.3\n";
  try {
    read_shots(ss);
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_NE(std::string(e.what()).find("line 3"), std::string::npos) << e.what();
  }
  std::stringstream bad_header("id,basis\n");
  EXPECT_THROW(read_shots(bad_header), ParseError);
}
