#pragma once

#include <Eigen/Dense>

#include "gaussent/covariance.hpp"

namespace gaussent {

/// Quadrature-symmetric state seen as TMSV(r) on (A, R) with R sent through a
/// beamsplitter of transmissivity eta whose other port carries a thermal mode.
struct ChannelFit {
  double r;
  double eta;
  double thermal_nu;
};

/// Pure four-mode state (A, B, E1, E2), xpxp ordering; E1 is the channel's environment
/// output and E2 purifies the thermal input.
struct ExtendedState {
  Eigen::MatrixXd covariance;
};

/// Replace (c1, c2) by (c, -c), c = (|c1| + |c2|)/2, in the standard form. If that
/// leaves the physical set, c is lowered to the boundary with a warning.
CovarianceMatrix symmetrize(const CovarianceMatrix& v);

/// Moment-matching fit of a quadrature-symmetric state; throws DecompositionError when
/// eta > 1 + 1e-6 or the thermal input falls below vacuum by more than 1e-6.
ChannelFit fit_channel(const StandardFormParams& p);

/// Purification of V built from its channel fit; the AB marginal equals V.
ExtendedState purify(const CovarianceMatrix& v);

/// (1/2) I(A:B|E) where E is one output of a balanced beamsplitter fed with E1 and vacuum.
/// Requires a quadrature-symmetric V (|c1 + c2| <= 1e-6); throws SymmetryError otherwise.
double squashed_upper_bound(const CovarianceMatrix& v);

}  // namespace gaussent
