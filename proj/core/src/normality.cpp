#include "gaussent/normality.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "gaussent/errors.hpp"

namespace gaussent {

JarqueBeraResult jarque_bera(std::span<const double> x) {
  if (x.size() < 1000) throw DomainError("Jarque-Bera test needs at least 1000 samples");
  const double n = static_cast<double>(x.size());
  double mean = 0.0;
  for (double v : x) mean += v;
  mean /= n;
  double m2 = 0.0;
  double m3 = 0.0;
  double m4 = 0.0;
  for (double v : x) {
    const double d = v - mean;
    const double d2 = d * d;
    m2 += d2;
    m3 += d2 * d;
    m4 += d2 * d2;
  }
  m2 /= n;
  m3 /= n;
  m4 /= n;
  if (!(m2 > 0.0)) return {0.0, 1.0};
  const double skew = m3 / std::pow(m2, 1.5);
  const double kurt = m4 / (m2 * m2) - 3.0;
  const double jb = n / 6.0 * (skew * skew + 0.25 * kurt * kurt);
  return {jb, std::exp(-0.5 * jb)};
}

double NormalityReport::min_p() const {
  return std::min({alice_x, alice_p, bob_x, bob_p});
}

NormalityReport normality_report(std::span<const ShotRecord> records) {
  std::vector<double> ax, ap, bx, bp;
  ax.reserve(records.size() / 2 + 1);
  ap.reserve(records.size() / 2 + 1);
  bx.reserve(records.size());
  bp.reserve(records.size());
  for (const auto& s : records) {
    (s.alice_basis == AliceBasis::X ? ax : ap).push_back(s.alice_outcome);
    bx.push_back(s.bob_x);
    bp.push_back(s.bob_p);
  }
  return {jarque_bera(ax).p_value, jarque_bera(ap).p_value, jarque_bera(bx).p_value, jarque_bera(bp).p_value};
}

}  // namespace gaussent
