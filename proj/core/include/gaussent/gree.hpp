#pragma once

#include <Eigen/Dense>

#include <cstddef>
#include <cstdint>

#include "gaussent/covariance.hpp"
#include "gaussent/nelder_mead.hpp"

namespace gaussent {

struct GreeOptions {
  unsigned starts = 8;
  /// Extra randomized starts are added (up to this many in total) while the best two disagree.
  unsigned max_starts = 16;
  std::uint64_t seed = 0x67726565;
  unsigned workers = 1;
  NelderMeadOptions simplex{};
};

struct GreeResult {
  double gree_nats;
  CovarianceMatrix closest_separable;
  std::size_t iterations;
  bool converged;
  double multistart_spread;
  unsigned starts;
};

/// Gaussian relative entropy of entanglement: min S(V || W) over Gaussian W with
/// W + i Omega >= 0 and PT(W) + i Omega >= 0.
///
/// The search runs in the standard-form frame of V. Each candidate is parametrized by a
/// lower-triangular factor P, and W = P P^T + tau I where tau >= 0 is the least isotropic
/// slack that makes W strictly physical and PPT. Every start is a seeded simplex descent.
GreeResult gree(const CovarianceMatrix& v, const GreeOptions& options = {});

/// The candidate map used by gree: 10 lower-triangular entries -> feasible W.
Matrix4 separable_candidate(const Eigen::Matrix<double, 10, 1>& factor);

}  // namespace gaussent
