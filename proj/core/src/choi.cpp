#include "gaussent/choi.hpp"

#include <array>
#include <cmath>
#include <string>

#include "gaussent/covariance.hpp"
#include "gaussent/errors.hpp"
#include "gaussent/measures.hpp"

namespace gaussent {
namespace {

constexpr std::array<std::pair<ChoiMeasure, std::string_view>, 7> kNames{{
    {ChoiMeasure::LogNeg, "logneg"},
    {ChoiMeasure::Eof, "eof"},
    {ChoiMeasure::ReeDistillable, "ree_distillable"},
    {ChoiMeasure::Rci, "rci"},
    {ChoiMeasure::SteeringFwd, "steering_fwd"},
    {ChoiMeasure::SteeringRev, "steering_rev"},
    {ChoiMeasure::CoherentInfo, "coherent_info"},
}};

constexpr double kChoiR = 15.0;
constexpr double kCheckR = 18.0;
constexpr double kAgreement = 1e-6;

double evaluate(const StandardFormParams& p, ChoiMeasure measure) {
  switch (measure) {
    case ChoiMeasure::LogNeg:
      return log_negativity(p);
    case ChoiMeasure::Eof:
      return eof_quadrature_symmetric(p).eof_nats;
    case ChoiMeasure::ReeDistillable:
    case ChoiMeasure::Rci:
      return reverse_coherent_information(p);
    case ChoiMeasure::SteeringFwd:
      return reid_steering(p).forward_product;
    case ChoiMeasure::SteeringRev:
      return reid_steering(p).reverse_product;
    case ChoiMeasure::CoherentInfo:
      return coherent_information(p);
  }
  throw DomainError("unknown measure");
}

}  // namespace

std::string_view to_string(ChoiMeasure m) {
  for (const auto& [id, name] : kNames) {
    if (id == m) return name;
  }
  return "unknown";
}

std::optional<ChoiMeasure> parse_choi_measure(std::string_view name) {
  for (const auto& [id, n] : kNames) {
    if (n == name) return id;
  }
  return std::nullopt;
}

double choi_bound(double eta, ChoiMeasure measure) {
  if (!(eta > 0.0 && eta < 1.0)) throw DomainError("Choi bound requires 0 < eta < 1, got " + std::to_string(eta));
  switch (measure) {
    case ChoiMeasure::LogNeg:
      return std::log((1.0 + eta) / (1.0 - eta));
    case ChoiMeasure::ReeDistillable:
      return -std::log1p(-eta);
    default:
      break;
  }
  const double value = evaluate(lossy_tmsv_form(kChoiR, eta), measure);
  const double check = evaluate(lossy_tmsv_form(kCheckR, eta), measure);
  if (!(std::abs(value - check) < kAgreement)) {
    throw NumericError("large-squeezing extrapolation of " + std::string(to_string(measure)) +
                       " did not settle (r = 15 vs r = 18)");
  }
  return value;
}

}  // namespace gaussent
