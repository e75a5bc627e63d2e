#pragma once

#include <optional>
#include <string>
#include <string_view>

namespace gaussent {

enum class ChoiMeasure { LogNeg, Eof, ReeDistillable, Rci, SteeringFwd, SteeringRev, CoherentInfo };

std::string_view to_string(ChoiMeasure m);
std::optional<ChoiMeasure> parse_choi_measure(std::string_view name);

/// Value of a measure on the Choi state of the pure-loss channel with transmissivity
/// eta (infinitely squeezed TMSV, loss on mode B), for 0 < eta < 1.
///
/// LogNeg and ReeDistillable use closed forms. The rest are evaluated on the lossy
/// TMSV at r = 15 and checked against r = 18; disagreement above 1e-6 throws NumericError.
/// CoherentInfo is negative for eta < 1/2 and is returned signed.
double choi_bound(double eta, ChoiMeasure measure);

}  // namespace gaussent
