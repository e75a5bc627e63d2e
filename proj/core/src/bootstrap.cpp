#include "gaussent/bootstrap.hpp"

#include <array>
#include <cmath>
#include <vector>

#include "gaussent/errors.hpp"
#include "gaussent/parallel.hpp"
#include "gaussent/rng.hpp"

namespace gaussent {
namespace {

constexpr double kSpreadSigmas = 1.5;

using Fields = std::array<double MeasureReport::*, 11>;
constexpr Fields kFields = {&MeasureReport::p_success, &MeasureReport::logneg, &MeasureReport::eof,
                            &MeasureReport::r0,        &MeasureReport::gree,   &MeasureReport::squashed_ub,
                            &MeasureReport::ci,        &MeasureReport::rci,    &MeasureReport::duan,
                            &MeasureReport::steer_fwd, &MeasureReport::steer_rev};

}  // namespace

BootstrapResult bootstrap_errorbars(std::span<const ShotRecord> records, const FilterParams& fp, unsigned n_reps,
                                    std::uint64_t seed, const BootstrapOptions& options) {
  if (n_reps < 2) throw DomainError("bootstrap needs at least two repetitions");
  std::vector<MeasureReport> reps(n_reps);
  parallel_for(n_reps, options.workers, [&](std::size_t i) {
    const EffectiveState st = mc_distill(records, fp, derive_seed(seed, i));
    MeasureReport r = evaluate_measures(st.covariance, options.gree);
    r.p_success = st.p_success;
    reps[i] = r;
  });

  BootstrapResult out{reps.front(), reps.front(), n_reps};
  const double n = static_cast<double>(n_reps);
  unsigned separable_votes = 0;
  for (const auto& r : reps) separable_votes += r.separable ? 1u : 0u;
  out.mean.separable = out.spread.separable = 2 * separable_votes > n_reps;
  for (auto field : kFields) {
    // Shifted by the first repetition so identical values give exactly zero spread.
    const double x0 = reps.front().*field;
    double shifted_mean = 0.0;
    for (const auto& r : reps) shifted_mean += r.*field - x0;
    shifted_mean /= n;
    double ss = 0.0;
    for (const auto& r : reps) ss += (r.*field - x0 - shifted_mean) * (r.*field - x0 - shifted_mean);
    out.mean.*field = x0 + shifted_mean;
    out.spread.*field = kSpreadSigmas * std::sqrt(ss / (n - 1.0));
  }
  return out;
}

}  // namespace gaussent
