#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>

namespace gaussent::cli {

/// Settings shared by the subcommands. The source is tmss(r) plus isotropic excess
/// noise, with loss eta applied to mode B.
struct RunConfig {
  double r = 0.8;
  double excess_noise = 0.05;
  double eta = 0.1;
  unsigned eta_steps = 21;
  /// Unset: taken from the loss preset (eta 0.1 -> 1.6, 0.5 -> 1.4, 1.0 -> 1.28).
  std::optional<double> gain_max;
  unsigned gain_steps = 7;
  /// Unset: the smallest cutoff whose accepted data pass the normality gate at gain_max.
  std::optional<double> cutoff;
  std::size_t shots = 100000;
  unsigned sets = 10;
  std::uint64_t seed = 1;
  unsigned workers = 1;
  unsigned bootstrap_reps = 100;
  double db_per_km = 0.2;
  std::string out;

  friend bool operator==(const RunConfig&, const RunConfig&) = default;

  std::size_t total_shots() const { return shots * sets; }
  /// Explicit gain_max or the preset for eta; throws ConfigError for other eta.
  double resolved_gain_max() const;
  /// Throws ConfigError naming the first out-of-domain field.
  void validate() const;
};

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Flat "key = value" lines; '#' starts a comment. Unknown or repeated keys and bad
/// values are ConfigErrors carrying the line number. gain_max and cutoff accept "auto".
RunConfig parse_config(std::istream& in, RunConfig base = {});
RunConfig load_config(const std::filesystem::path& path, RunConfig base = {});

/// Writes every key in a fixed order; parse_config reads it back unchanged.
void write_config(std::ostream& out, const RunConfig& config);

}  // namespace gaussent::cli
