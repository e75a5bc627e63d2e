#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "gaussent_cli/commands.hpp"
#include "gaussent_cli/config.hpp"

namespace {

using gaussent::cli::RunConfig;

struct Overrides {
  std::string config_file;
  std::optional<double> eta;
  std::optional<double> gain_max;
  std::optional<double> gain;
  std::string cutoff;
  std::optional<std::size_t> shots;
  std::optional<unsigned> sets;
  std::optional<std::uint64_t> seed;
  std::optional<unsigned> workers;
  std::optional<unsigned> bootstrap_reps;
  std::string out;
};

void add_run_options(CLI::App* cmd, Overrides& o) {
  cmd->add_option("--config", o.config_file, "key = value run configuration file")->check(CLI::ExistingFile);
  cmd->add_option("--eta", o.eta, "channel transmissivity");
  cmd->add_option("--shots", o.shots, "shots per set");
  cmd->add_option("--seed", o.seed, "run seed");
  cmd->add_option("--workers", o.workers, "worker threads");
  cmd->add_option("--out", o.out, "output CSV path (default: stdout)");
}

RunConfig resolve(const Overrides& o) {
  RunConfig c;
  if (!o.config_file.empty()) c = gaussent::cli::load_config(o.config_file);
  if (o.eta) c.eta = *o.eta;
  if (o.gain_max) c.gain_max = *o.gain_max;
  if (o.gain) {
    c.gain_max = *o.gain;
    c.gain_steps = 1;
  }
  if (o.cutoff == "auto") {
    c.cutoff.reset();
  } else if (!o.cutoff.empty()) {
    try {
      std::size_t used = 0;
      c.cutoff = std::stod(o.cutoff, &used);
      if (used != o.cutoff.size()) throw std::invalid_argument("trailing characters");
    } catch (const std::exception&) {
      throw gaussent::cli::ConfigError("--cutoff expects a number or 'auto', got '" + o.cutoff + "'");
    }
  }
  if (o.shots) c.shots = *o.shots;
  if (o.sets) c.sets = *o.sets;
  if (o.seed) c.seed = *o.seed;
  if (o.workers) c.workers = *o.workers;
  if (o.bootstrap_reps) c.bootstrap_reps = *o.bootstrap_reps;
  if (!o.out.empty()) c.out = o.out;
  c.validate();
  return c;
}

template <class Run>
int with_output(const std::string& path, Run run) {
  if (path.empty()) return run(std::cout);
  std::ofstream file(path);
  if (!file) {
    std::cerr << "error: cannot open " << path << " for writing\n";
    return gaussent::cli::kExitPartial;
  }
  return run(file);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Two-mode Gaussian entanglement measures and measurement-based amplification"};
  app.require_subcommand(1);

  Overrides sweep_o;
  auto* sweep = app.add_subcommand("sweep-loss", "effective squeezing and loss-equivalent distance over eta");
  add_run_options(sweep, sweep_o);

  Overrides distill_o;
  auto* distill = app.add_subcommand("distill", "post-selection sweep over gain: Monte Carlo and theory rows");
  add_run_options(distill, distill_o);
  distill->add_option("--gain-max", distill_o.gain_max, "largest gain of the sweep");
  distill->add_option("--gain", distill_o.gain, "run a single gain");
  distill->add_option("--cutoff", distill_o.cutoff, "filter cutoff, or 'auto'");
  distill->add_option("--sets", distill_o.sets, "number of shot sets");
  distill->add_option("--bootstrap-reps", distill_o.bootstrap_reps, "post-selection repetitions for error bars");

  std::string measures_file;
  std::string measures_out;
  auto* measures = app.add_subcommand("measures", "all measures of a covariance-matrix file");
  measures->add_option("file", measures_file, "covariance matrix file")->required();
  measures->add_option("--out", measures_out, "output CSV path (default: stdout)");

  std::vector<double> choi_etas;
  std::string choi_out;
  auto* choi = app.add_subcommand("choi", "deterministic bounds of the pure-loss channel");
  choi->add_option("--eta", choi_etas, "transmissivities, comma separated")->delimiter(',');
  choi->add_option("--out", choi_out, "output CSV path (default: stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? gaussent::cli::kExitOk : gaussent::cli::kExitUsage;
  }

  try {
    if (*sweep) {
      const RunConfig c = resolve(sweep_o);
      return with_output(c.out, [&](std::ostream& out) { return gaussent::cli::cmd_sweep_loss(c, out, std::cerr); });
    }
    if (*distill) {
      const RunConfig c = resolve(distill_o);
      c.resolved_gain_max();
      return with_output(c.out, [&](std::ostream& out) { return gaussent::cli::cmd_distill(c, out, std::cerr); });
    }
    if (*measures) {
      std::ostream& summary = measures_out.empty() ? std::cerr : std::cout;
      return with_output(measures_out, [&](std::ostream& out) {
        return gaussent::cli::cmd_measures(measures_file, out, summary, std::cerr);
      });
    }
    if (*choi) {
      if (choi_etas.empty()) choi_etas = gaussent::cli::default_choi_grid();
      return with_output(choi_out, [&](std::ostream& out) { return gaussent::cli::cmd_choi(choi_etas, out, std::cerr); });
    }
  } catch (const gaussent::cli::ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return gaussent::cli::kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return gaussent::cli::kExitPartial;
  }
  return gaussent::cli::kExitUsage;
}
