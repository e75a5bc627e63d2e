#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include "gaussent/covariance.hpp"
#include "gaussent/shots.hpp"

namespace gaussent {

/// Measurement-based amplifier settings: amplitude gain g >= 1 and cutoff alpha_c >= 0,
/// both in vacuum units of the heterodyne amplitude alpha = (x_h + i p_h)/sqrt(2).
struct FilterParams {
  double gain = 1.0;
  double cutoff = 0.0;

  /// Throws DomainError unless gain >= 1 and cutoff >= 0 (both finite).
  void validate() const;
};

enum class EffectiveMethod { AnalyticInfiniteCutoff, NumericFiniteCutoff, MonteCarlo };

std::string_view to_string(EffectiveMethod m);

struct EffectiveState {
  /// Physical covariance. For Monte Carlo output this is raw_covariance with the least
  /// isotropic noise needed to make it physical (none in the usual case).
  CovarianceMatrix covariance;
  Matrix4 raw_covariance;
  /// Isotropic noise added to raw_covariance to reach the physical set.
  double added_noise;
  double p_success;
  EffectiveMethod method;
  /// Per-entry standard errors; zero for the analytic methods.
  Matrix4 standard_error;
  std::size_t accepted;
  std::size_t total;
};

/// exp((1 - 1/g^2)(|alpha|^2 - alpha_c^2)) inside the cutoff, 1 outside.
double acceptance_probability(std::complex<double> alpha, const FilterParams& fp);

inline std::complex<double> rescale(std::complex<double> alpha, double gain) { return alpha / gain; }

/// Heterodyne amplitude of a shot.
inline std::complex<double> heterodyne_amplitude(const ShotRecord& s) {
  return {s.bob_x / std::sqrt(2.0), s.bob_p / std::sqrt(2.0)};
}

/// Effective state for an infinite cutoff. Throws DivergenceError when the filter weight
/// is not integrable against Bob's heterodyne distribution.
CovarianceMatrix ideal_nla_state(const CovarianceMatrix& v, double gain);

/// Acceptance rate of the filter on Bob's heterodyne outcomes of V. The radial part is
/// integrated in closed form; the angle by adaptive Gauss-Kronrod at relative tolerance
/// 1e-10. Throws NumericError if the angular quadrature does not converge to 1e-6.
double success_probability(const CovarianceMatrix& v, const FilterParams& fp);

/// Exact post-selected Gaussian moments for a finite cutoff (the state itself is not
/// Gaussian; this is its covariance).
EffectiveState finite_cutoff_nla_state(const CovarianceMatrix& v, const FilterParams& fp);

/// Accepts each shot with probability acceptance_probability, drawing the uniform from
/// derive_seed(seed, shot_id), and rescales Bob's accepted outcomes by 1/g.
std::vector<ShotRecord> postselect(std::span<const ShotRecord> records, const FilterParams& fp,
                                   std::uint64_t seed);

struct McOptions {
  unsigned workers = 1;
};

/// Post-selection on a recorded shot stream followed by covariance estimation.
/// Needs at least 1e4 records; throws StarvationError below 100 accepted shots.
EffectiveState mc_distill(std::span<const ShotRecord> records, const FilterParams& fp, std::uint64_t seed,
                          const McOptions& options = {});

/// Effective state from already post-selected records.
EffectiveState effective_from_accepted(std::span<const ShotRecord> accepted, std::size_t total);

struct PhysicalProjection {
  CovarianceMatrix covariance;
  double added_noise;
};

/// V + t I with the least t >= 0 (to bisection precision) that makes V physical.
/// Estimates from post-selected data can be unphysical: outcomes outside the cutoff are
/// rescaled without being amplified, which shrinks Bob's inferred variance.
PhysicalProjection nearest_physical(const Matrix4& v);

}  // namespace gaussent
