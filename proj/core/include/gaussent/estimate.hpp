#pragma once

#include <cstddef>
#include <span>

#include "gaussent/covariance.hpp"
#include "gaussent/shots.hpp"

namespace gaussent {

struct CovEstimate {
  /// Raw estimate; noise can place it slightly outside the physical set.
  Matrix4 covariance;
  Matrix4 standard_error;
  std::size_t n_shots;
  /// (sum w)^2 / sum w^2; equals n_shots for unweighted data.
  double effective_shots;
};

/// Estimates the two-mode covariance matrix from shot records.
///
/// Alice's block uses the variance of her X-basis outcomes and of her P-basis outcomes;
/// the x_A p_A entry is not measurable with one homodyne basis per shot and is set to 0.
/// Bob's block is 2 Var(h) - I over all shots. Cross terms come from matched-basis
/// coincidences: x_A with both heterodyne components on X shots, p_A likewise on P shots,
/// scaled by sqrt(2). Every channel is mean-subtracted. Standard errors use the fourth
/// moments, (E[d_i^2 d_j^2] - s_ij^2) / n, propagated through the same scalings.
///
/// Optional non-negative weights make every moment a weighted moment.
/// Throws InsufficientDataError below 100 effective shots (or without both bases) and
/// DegenerateStateError when a channel has zero variance.
CovEstimate estimate_covariance(std::span<const ShotRecord> records, std::span<const double> weights = {});

}  // namespace gaussent
