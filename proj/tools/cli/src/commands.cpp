#include "gaussent_cli/commands.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <ostream>

#include "gaussent/bootstrap.hpp"
#include "gaussent/choi.hpp"
#include "gaussent/covariance_io.hpp"
#include "gaussent/errors.hpp"
#include "gaussent/measures.hpp"
#include "gaussent/nla.hpp"
#include "gaussent/normality.hpp"
#include "gaussent/parallel.hpp"
#include "gaussent/rng.hpp"

namespace gaussent::cli {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr double kGateLevel = 0.05;
constexpr std::size_t kJbMinSamples = 1000;

// Seed streams derived from the run seed.
constexpr std::uint64_t kShotStream = 0;
constexpr std::uint64_t kCutoffStream = 1;
constexpr std::uint64_t kAcceptStream = 2;
constexpr std::uint64_t kBootstrapStream = 3;

constexpr std::array kChoiMeasures = {ChoiMeasure::LogNeg,      ChoiMeasure::Eof,         ChoiMeasure::ReeDistillable,
                                      ChoiMeasure::Rci,         ChoiMeasure::SteeringFwd, ChoiMeasure::SteeringRev,
                                      ChoiMeasure::CoherentInfo};

double choi_or_nan(double eta, ChoiMeasure m) {
  try {
    return choi_bound(eta, m);
  } catch (const DomainError&) {
    return kNaN;
  }
}

MeasureReport nan_report() {
  MeasureReport r;
  for (double* x : {&r.p_success, &r.logneg, &r.eof, &r.r0, &r.gree, &r.squashed_ub, &r.ci, &r.rci, &r.duan,
                    &r.steer_fwd, &r.steer_rev}) {
    *x = kNaN;
  }
  return r;
}

bool enough_for_gate(std::span<const ShotRecord> accepted) {
  std::size_t x = 0;
  for (const auto& s : accepted) x += s.alice_basis == AliceBasis::X ? 1 : 0;
  return x >= kJbMinSamples && accepted.size() - x >= kJbMinSamples;
}

std::string cell_name(double eta, double gain) {
  return "eta=" + format_real(eta) + ",gain=" + format_real(gain);
}

}  // namespace

CovarianceMatrix source_state(const RunConfig& config, double eta) {
  return loss_channel(add_noise(tmss(config.r), config.excess_noise), eta, Mode::B);
}

std::vector<ShotRecord> source_shots(const RunConfig& config) {
  const CovarianceMatrix v = source_state(config, config.eta);
  const std::uint64_t base = derive_seed(config.seed, kShotStream);
  std::vector<ShotRecord> all;
  all.reserve(config.total_shots());
  for (unsigned s = 0; s < config.sets; ++s) {
    auto set = synth_shots(v, config.shots, derive_seed(base, s), config.workers);
    for (auto& rec : set) rec.shot_id += static_cast<std::uint64_t>(s) * config.shots;
    all.insert(all.end(), set.begin(), set.end());
  }
  return all;
}

std::vector<double> gain_grid(const RunConfig& config) {
  const double g_max = config.resolved_gain_max();
  if (config.gain_steps == 1) return {g_max};
  std::vector<double> grid(config.gain_steps);
  for (unsigned i = 0; i < config.gain_steps; ++i) {
    grid[i] = 1.0 + (g_max - 1.0) * i / (config.gain_steps - 1);
  }
  grid.back() = g_max;
  return grid;
}

CutoffChoice choose_cutoff(std::span<const ShotRecord> records, double gain, std::uint64_t seed) {
  std::vector<std::pair<double, bool>> usable;
  for (int k = 0; k <= 20; ++k) {
    const double cutoff = 1.0 + 0.25 * k;
    const auto accepted = postselect(records, {gain, cutoff}, seed);
    if (!enough_for_gate(accepted)) break;
    usable.emplace_back(cutoff, normality_report(accepted).passes(kGateLevel));
  }
  if (usable.empty()) throw InsufficientDataError("no cutoff leaves enough accepted shots for the normality gate");
  if (!usable.back().second) return {usable.back().first, false};
  std::size_t i = usable.size() - 1;
  while (i > 0 && usable[i - 1].second) --i;
  return {usable[i].first, true};
}

DistillResult run_distill(const RunConfig& config) {
  config.validate();
  const std::vector<double> gains = gain_grid(config);
  const CovarianceMatrix v = source_state(config, config.eta);
  const std::vector<ShotRecord> shots = source_shots(config);

  DistillResult result{};
  if (config.cutoff) {
    result.cutoff = *config.cutoff;
    result.cutoff_gate_passed = true;
  } else {
    const CutoffChoice choice =
        choose_cutoff(shots, config.resolved_gain_max(), derive_seed(config.seed, kCutoffStream));
    result.cutoff = choice.cutoff;
    result.cutoff_gate_passed = choice.gate_passed;
  }

  GreeOptions gree_options;
  result.initial_gree = gree(v, gree_options).gree_nats;
  std::array<double, kChoiMeasures.size()> choi{};
  for (std::size_t i = 0; i < kChoiMeasures.size(); ++i) choi[i] = choi_or_nan(config.eta, kChoiMeasures[i]);

  auto flag = [&](DistillRow& row) {
    const MeasureReport& m = row.report;
    row.logneg_only_above_bound = m.logneg > choi[0] && m.eof < choi[1] && m.gree < choi[2];
    row.rci_above_initial_gree = m.rci > result.initial_gree;
  };

  struct Cell {
    std::vector<DistillRow> rows;
    std::string failure;
  };
  std::vector<Cell> cells(gains.size());
  parallel_for(gains.size(), config.workers, [&](std::size_t i) {
    const double g = gains[i];
    const FilterParams fp{g, result.cutoff};
    Cell& cell = cells[i];
    try {
      const auto accepted = postselect(shots, fp, derive_seed(config.seed, kAcceptStream));
      DistillRow mc{"mc", {}, kNaN, nan_report(), false, false};
      const EffectiveState st = effective_from_accepted(accepted, shots.size());
      mc.report = evaluate_measures(st.covariance, gree_options);
      mc.report.p_success = st.p_success;
      if (enough_for_gate(accepted)) mc.jb_min_p = normality_report(accepted).min_p();
      if (config.bootstrap_reps >= 2) {
        mc.spread = bootstrap_errorbars(shots, fp, config.bootstrap_reps, derive_seed(config.seed, kBootstrapStream),
                                        {1, gree_options})
                        .spread;
      }
      DistillRow theory{"theory", {}, kNaN, nan_report(), false, false};
      theory.report = evaluate_measures(ideal_nla_state(v, g), gree_options);
      theory.report.p_success = success_probability(v, fp);
      for (DistillRow* row : {&mc, &theory}) {
        row->report.eta = config.eta;
        row->report.gain = g;
        row->report.cutoff = result.cutoff;
        flag(*row);
      }
      cell.rows = {mc, theory};
    } catch (const std::exception& e) {
      cell.failure = cell_name(config.eta, g) + ": " + e.what();
      cell.rows.clear();
    }
  });
  for (auto& cell : cells) {
    if (!cell.failure.empty()) result.failures.push_back(cell.failure);
    result.rows.insert(result.rows.end(), cell.rows.begin(), cell.rows.end());
  }
  std::stable_sort(result.rows.begin(), result.rows.end(), [](const DistillRow& a, const DistillRow& b) {
    if (a.report.gain != b.report.gain) return a.report.gain < b.report.gain;
    return a.series < b.series;
  });
  return result;
}

std::string distill_csv_header() {
  std::string h = "series," + report_csv_header() + ",jb_min_p";
  for (const char* name : {"p_success", "logneg", "eof", "r0", "gree", "squashed_ub", "ci", "rci", "duan", "steer_fwd",
                           "steer_rev"}) {
    h += ",spread_";
    h += name;
  }
  for (ChoiMeasure m : kChoiMeasures) {
    h += ",choi_";
    h += to_string(m);
  }
  h += ",logneg_only_above_bound,rci_above_initial_gree";
  return h;
}

void write_distill_csv(std::ostream& out, const DistillResult& result) {
  out << distill_csv_header() << '\n';
  for (const auto& row : result.rows) {
    const MeasureReport& s = row.spread;
    out << row.series << ',' << report_csv_row(row.report) << ',' << format_real(row.jb_min_p);
    for (double x : {s.p_success, s.logneg, s.eof, s.r0, s.gree, s.squashed_ub, s.ci, s.rci, s.duan, s.steer_fwd,
                     s.steer_rev}) {
      out << ',' << format_real(x);
    }
    for (ChoiMeasure m : kChoiMeasures) out << ',' << format_real(choi_or_nan(row.report.eta, m));
    out << ',' << (row.logneg_only_above_bound ? 1 : 0) << ',' << (row.rci_above_initial_gree ? 1 : 0) << '\n';
  }
}

int cmd_distill(const RunConfig& config, std::ostream& out, std::ostream& err) {
  const DistillResult result = run_distill(config);
  write_distill_csv(out, result);
  if (!result.cutoff_gate_passed) {
    err << "warning: no cutoff passed the normality gate at gain " << format_real(config.resolved_gain_max())
        << "; using cutoff " << format_real(result.cutoff) << '\n';
  }
  for (const auto& row : result.rows) {
    if (row.series == "mc" && row.logneg_only_above_bound && row.report.p_success >= 1e-4) {
      err << "note: only log negativity exceeds its deterministic bound at " << cell_name(row.report.eta, row.report.gain)
          << " (p_success " << format_real(row.report.p_success) << ")\n";
      break;
    }
  }
  for (const auto& row : result.rows) {
    if (row.series == "theory" && row.rci_above_initial_gree) {
      err << "note: reverse coherent information exceeds the initial Gaussian REE from p_success "
          << format_real(row.report.p_success) << " (gain " << format_real(row.report.gain) << ")\n";
      break;
    }
  }
  for (const auto& f : result.failures) err << "failed cell " << f << '\n';
  return result.failures.empty() ? kExitOk : kExitPartial;
}

int cmd_sweep_loss(const RunConfig& config, std::ostream& out, std::ostream& err) {
  config.validate();
  out << "eta,nu_minus,exp_m2r0,distance_km\n";
  int status = kExitOk;
  for (unsigned i = 0; i < config.eta_steps; ++i) {
    const double eta = i == config.eta_steps - 1 ? 1.0 : static_cast<double>(i) / (config.eta_steps - 1);
    try {
      const StandardFormParams p = standard_form(source_state(config, eta));
      const double nu = pt_spectrum(p).nu_minus;
      const double squeeze = std::exp(-2.0 * eof_quadrature_symmetric(p).r0);
      double km = std::numeric_limits<double>::infinity();
      if (eta >= 1.0) {
        km = 0.0;
      } else if (eta > 0.0) {
        km = -10.0 / config.db_per_km * std::log10(eta);
      }
      out << format_real(eta) << ',' << format_real(nu) << ',' << format_real(squeeze) << ',' << format_real(km) << '\n';
    } catch (const std::exception& e) {
      err << "failed cell eta=" << format_real(eta) << ": " << e.what() << '\n';
      status = kExitPartial;
    }
  }
  return status;
}

int cmd_measures(const std::filesystem::path& covariance_file, std::ostream& out, std::ostream& summary,
                 std::ostream& err) {
  try {
    const CovarianceMatrix v = require_physical(load_covariance(covariance_file));
    const MeasureReport r = evaluate_measures(v);
    out << report_csv_header() << '\n' << report_csv_row(r) << '\n';
    write_report_summary(summary, r);
    return kExitOk;
  } catch (const std::exception& e) {
    err << "error: " << covariance_file.string() << ": " << e.what() << '\n';
    return kExitPartial;
  }
}

std::vector<double> default_choi_grid() {
  std::vector<double> grid;
  for (int k = 1; k <= 19; ++k) grid.push_back(0.05 * k);
  return grid;
}

int cmd_choi(std::span<const double> etas, std::ostream& out, std::ostream& err) {
  out << "eta";
  for (ChoiMeasure m : kChoiMeasures) out << ',' << to_string(m);
  out << '\n';
  int status = kExitOk;
  for (double eta : etas) {
    std::string row = format_real(eta);
    try {
      for (ChoiMeasure m : kChoiMeasures) row += ',' + format_real(choi_bound(eta, m));
      out << row << '\n';
    } catch (const std::exception& e) {
      err << "failed eta=" << format_real(eta) << ": " << e.what() << '\n';
      status = kExitPartial;
    }
  }
  return status;
}

}  // namespace gaussent::cli
