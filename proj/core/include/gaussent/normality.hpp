#pragma once

#include <span>

#include "gaussent/shots.hpp"

namespace gaussent {

struct JarqueBeraResult {
  double statistic;
  double p_value;
};

/// JB = (n/6)(s^2 + k^2/4) with sample skewness s and excess kurtosis k (biased moment
/// estimators); p-value from the chi-square(2) tail, exp(-JB/2). Requires n >= 1000.
JarqueBeraResult jarque_bera(std::span<const double> samples);

/// Jarque-Bera p-values for the four measured channels of a shot stream.
struct NormalityReport {
  double alice_x;
  double alice_p;
  double bob_x;
  double bob_p;

  double min_p() const;
  bool passes(double level = 0.05) const { return min_p() >= level; }
};

NormalityReport normality_report(std::span<const ShotRecord> records);

}  // namespace gaussent
