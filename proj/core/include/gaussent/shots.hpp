#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <vector>

#include "gaussent/covariance.hpp"

namespace gaussent {

enum class AliceBasis : std::uint8_t { X, P };

/// One measurement event. Alice homodynes one quadrature; Bob heterodynes, recording
/// x_h = (x_B + x_v)/sqrt(2) and p_h = (p_B - p_v)/sqrt(2) with independent vacuum
/// noise (x_v, p_v).
struct ShotRecord {
  std::uint64_t shot_id = 0;
  AliceBasis alice_basis = AliceBasis::X;
  double alice_outcome = 0.0;
  double bob_x = 0.0;
  double bob_p = 0.0;

  friend bool operator==(const ShotRecord&, const ShotRecord&) = default;
};

/// Shots are generated in fixed chunks of this many records, each from its own
/// derived seed, so the stream does not depend on the number of workers.
inline constexpr std::size_t kShotChunk = 1u << 16;

/// n i.i.d. shots from the zero-mean Gaussian with covariance V. Throws
/// NumericError when V has no Cholesky factor.
std::vector<ShotRecord> synth_shots(const CovarianceMatrix& v, std::size_t n, std::uint64_t seed,
                                    unsigned workers = 1);

// Shot file: header "shot_id,alice_basis,alice_outcome,bob_x,bob_p", then one
// record per line, basis written as X or P, reals with 17 significant digits.
void write_shots(std::ostream& out, const std::vector<ShotRecord>& records);
std::vector<ShotRecord> read_shots(std::istream& in);

void save_shots(const std::filesystem::path& path, const std::vector<ShotRecord>& records);
std::vector<ShotRecord> load_shots(const std::filesystem::path& path);

}  // namespace gaussent
