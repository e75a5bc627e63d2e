#pragma once

#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "gaussent/covariance.hpp"
#include "gaussent/report.hpp"
#include "gaussent/shots.hpp"
#include "gaussent_cli/config.hpp"

namespace gaussent::cli {

enum ExitCode : int { kExitOk = 0, kExitPartial = 1, kExitUsage = 2 };

/// tmss(r) plus excess noise, then loss eta on mode B.
CovarianceMatrix source_state(const RunConfig& config, double eta);

/// All sets of shots for the configured source, concatenated with consecutive ids.
std::vector<ShotRecord> source_shots(const RunConfig& config);

/// Gains 1 .. gain_max in gain_steps equal steps ({gain_max} for a single step).
std::vector<double> gain_grid(const RunConfig& config);

struct CutoffChoice {
  double cutoff;
  bool gate_passed;
};

/// Scans cutoffs 1, 1.25, ..., 6 at the given gain. Only cutoffs leaving at least 1000
/// accepted samples per channel are usable. Picks the smallest cutoff of the run of
/// passing cutoffs at the top of the usable range; when the largest usable cutoff fails
/// the gate, returns it with gate_passed = false. Throws InsufficientDataError if no
/// cutoff is usable.
CutoffChoice choose_cutoff(std::span<const ShotRecord> records, double gain, std::uint64_t seed);

struct DistillRow {
  std::string series;  // "mc" or "theory"
  MeasureReport report;
  double jb_min_p;
  MeasureReport spread;  // bootstrap 1.5 sigma; NaN when not computed
  bool logneg_only_above_bound;
  bool rci_above_initial_gree;
};

struct DistillResult {
  double cutoff;
  bool cutoff_gate_passed;
  double initial_gree;
  std::vector<DistillRow> rows;        // sorted by (gain, series)
  std::vector<std::string> failures;  // one entry per failed (eta, gain) cell
};

DistillResult run_distill(const RunConfig& config);

std::string distill_csv_header();
void write_distill_csv(std::ostream& out, const DistillResult& result);

/// Each returns an ExitCode; CSV goes to out, diagnostics to err.
int cmd_sweep_loss(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_distill(const RunConfig& config, std::ostream& out, std::ostream& err);
/// cmd_measures writes the CSV header and row to out and the readable summary to summary.
int cmd_measures(const std::filesystem::path& covariance_file, std::ostream& out, std::ostream& summary,
                 std::ostream& err);
int cmd_choi(std::span<const double> etas, std::ostream& out, std::ostream& err);

/// Default eta grid for cmd_choi: 0.05, 0.10, ..., 0.95.
std::vector<double> default_choi_grid();

}  // namespace gaussent::cli
