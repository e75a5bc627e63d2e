#include "gaussent/gree.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "gaussent/errors.hpp"
#include "gaussent/measures.hpp"
#include "gaussent/parallel.hpp"
#include "gaussent/relative_entropy.hpp"
#include "gaussent/rng.hpp"

namespace gaussent {
namespace {

using Factor = Eigen::Matrix<double, 10, 1>;

// Physical margin keeps the Gibbs exponent of W finite.
constexpr double kPhysicalMargin = 1e-7;
constexpr double kAgree = 1e-5;
constexpr double kTie = 1e-6;

// min(nu_-(W) - 1 - margin, nu~_-(W) - 1) from the local invariants.
double feasibility(const Matrix4& w) {
  const double det_m = w(0, 0) * w(1, 1) - w(0, 1) * w(1, 0);
  const double det_n = w(2, 2) * w(3, 3) - w(2, 3) * w(3, 2);
  const double det_c = w(0, 2) * w(1, 3) - w(0, 3) * w(1, 2);
  const double det_sigma = w.determinant();
  if (!(det_sigma > 0.0) || !(w(0, 0) > 0.0) || !(det_m > 0.0)) return -1.0;
  auto least = [det_sigma](double delta) {
    const double disc = std::max(0.0, delta * delta - 4.0 * det_sigma);
    const double plus_sq = 0.5 * (delta + std::sqrt(disc));
    return plus_sq > 0.0 ? std::sqrt(det_sigma / plus_sq) : 0.0;
  };
  const double nu = least(det_m + det_n + 2.0 * det_c);
  const double nu_pt = least(det_m + det_n - 2.0 * det_c);
  return std::min(nu - 1.0 - kPhysicalMargin, nu_pt - 1.0);
}

Matrix4 factor_matrix(const Factor& f) {
  Matrix4 p = Matrix4::Zero();
  int k = 0;
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j <= i; ++j) p(i, j) = f(k++);
  }
  return p;
}

Factor factor_of(const Matrix4& w) {
  const Eigen::LLT<Matrix4> llt(w);
  const Matrix4 l = llt.matrixL();
  Factor f;
  int k = 0;
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j <= i; ++j) f(k++) = l(i, j);
  }
  return f;
}

// Least tau >= 0 with feasibility(base + tau I) >= 0, by the Illinois variant of regula falsi.
double slack(const Matrix4& base) {
  auto g = [&](double tau) { return feasibility(base + tau * Matrix4::Identity()); };
  const double g0 = g(0.0);
  if (g0 >= 0.0) return 0.0;
  double lo = 0.0;
  double glo = g0;
  double hi = std::max(1e-6, -g0);
  double ghi = g(hi);
  while (ghi < 0.0) {
    lo = hi;
    glo = ghi;
    hi *= 2.0;
    ghi = g(hi);
  }
  int side = 0;
  for (int it = 0; it < 100; ++it) {
    if (hi - lo <= 4e-16 * hi) break;
    double mid = (lo * ghi - hi * glo) / (ghi - glo);
    if (!(mid > lo && mid < hi)) mid = 0.5 * (lo + hi);
    const double gm = g(mid);
    if (gm >= 0.0) {
      hi = mid;
      ghi = gm;
      if (side == 1) glo *= 0.5;
      side = 1;
    } else {
      lo = mid;
      glo = gm;
      if (side == -1) ghi *= 0.5;
      side = -1;
    }
    if (gm == 0.0) break;
  }
  return hi;
}

struct StartResult {
  double value = std::numeric_limits<double>::infinity();
  Matrix4 w = Matrix4::Identity();
  std::size_t iterations = 0;
};

Matrix4 start_point(unsigned k, const Matrix4& v_sf, std::uint64_t seed) {
  if (k == 0) return Matrix4::Identity();
  if (k == 1) return v_sf;
  Rng rng(derive_seed(seed, k));
  const Matrix4 r = random_physical_state(rng.bits()).entries();
  const double lambda = rng.uniform();
  return lambda * v_sf + (1.0 - lambda) * r;
}

StartResult run_start(const RelativeEntropyTarget& target, const Matrix4& w0, const NelderMeadOptions& opt) {
  auto objective = [&](const Eigen::VectorXd& x) {
    const Matrix4 w = separable_candidate(Factor(x));
    try {
      const double s = target.against(w);
      return std::isnan(s) ? std::numeric_limits<double>::infinity() : s;
    } catch (const NumericError&) {
      return std::numeric_limits<double>::infinity();
    }
  };
  const NelderMeadResult nm = nelder_mead(objective, Eigen::VectorXd(factor_of(w0)), opt);
  return {nm.value, separable_candidate(Factor(nm.x)), nm.iterations};
}

}  // namespace

Matrix4 separable_candidate(const Factor& factor) {
  const Matrix4 p = factor_matrix(factor);
  const Matrix4 base = p * p.transpose();
  return base + slack(base) * Matrix4::Identity();
}

GreeResult gree(const CovarianceMatrix& input, const GreeOptions& options) {
  const CovarianceMatrix v = require_physical(input);
  if (ppt_separable(v)) return {0.0, v, 0, true, 0.0, 0};

  // Relative entropy and the separable set are invariant under local symplectics,
  // so optimize against the standard form and map the minimizer back.
  const StandardFormDecomposition sf = standard_form_decomposition(v);
  const CovarianceMatrix v_sf = sf.params.matrix();
  const RelativeEntropyTarget target(v_sf);

  const unsigned base_starts = std::max(2u, options.starts);
  const unsigned max_starts = std::max(base_starts, options.max_starts);
  std::vector<StartResult> results(base_starts);
  parallel_for(results.size(), options.workers, [&](std::size_t k) {
    results[k] = run_start(target, start_point(static_cast<unsigned>(k), v_sf.entries(), options.seed), options.simplex);
  });

  auto spread_of = [](std::vector<StartResult> rs) {
    std::sort(rs.begin(), rs.end(), [](const auto& a, const auto& b) { return a.value < b.value; });
    return rs[1].value - rs[0].value;
  };
  double spread = spread_of(results);
  while (!(spread <= kAgree) && results.size() < max_starts) {
    const auto k = static_cast<unsigned>(results.size());
    results.push_back(run_start(target, start_point(k, v_sf.entries(), options.seed), options.simplex));
    spread = spread_of(results);
  }

  double best = std::numeric_limits<double>::infinity();
  std::size_t iterations = 0;
  for (const auto& r : results) {
    best = std::min(best, r.value);
    iterations += r.iterations;
  }
  if (!std::isfinite(best)) throw NumericError("relative entropy minimization found no feasible point");

  // Among near-ties prefer the candidate closest to V (Frobenius norm, in the original frame).
  const Matrix4& local = sf.local;
  Matrix4 chosen = Matrix4::Identity();
  double chosen_distance = std::numeric_limits<double>::infinity();
  for (const auto& r : results) {
    if (r.value > best + kTie) continue;
    const Matrix4 w = local * r.w * local.transpose();
    const double d = (w - v.entries()).norm();
    if (d < chosen_distance) {
      chosen_distance = d;
      chosen = w;
    }
  }
  const Matrix4 sym = 0.5 * (chosen + chosen.transpose());
  return {std::max(0.0, best), CovarianceMatrix(sym), iterations, spread <= kAgree, spread,
          static_cast<unsigned>(results.size())};
}

}  // namespace gaussent
