#include "gaussent_cli/config.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <istream>
#include <map>
#include <ostream>
#include <set>
#include <string_view>

namespace gaussent::cli {
namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

[[noreturn]] void fail(std::size_t line, const std::string& what) {
  throw ConfigError("line " + std::to_string(line) + ": " + what);
}

double parse_real(std::string_view text, std::size_t line, std::string_view key) {
  double x = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), x);
  if (ec != std::errc() || ptr != text.data() + text.size() || !std::isfinite(x)) {
    fail(line, "invalid number '" + std::string(text) + "' for " + std::string(key));
  }
  return x;
}

template <class Int>
Int parse_integer(std::string_view text, std::size_t line, std::string_view key) {
  Int x = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), x);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    fail(line, "invalid integer '" + std::string(text) + "' for " + std::string(key));
  }
  return x;
}

std::optional<double> parse_auto(std::string_view text, std::size_t line, std::string_view key) {
  if (text == "auto") return std::nullopt;
  return parse_real(text, line, key);
}

std::string real_text(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

using Setter = std::function<void(RunConfig&, std::string_view, std::size_t)>;

const std::map<std::string_view, Setter>& setters() {
  static const std::map<std::string_view, Setter> table = {
      {"r", [](RunConfig& c, std::string_view v, std::size_t l) { c.r = parse_real(v, l, "r"); }},
      {"excess_noise",
       [](RunConfig& c, std::string_view v, std::size_t l) { c.excess_noise = parse_real(v, l, "excess_noise"); }},
      {"eta", [](RunConfig& c, std::string_view v, std::size_t l) { c.eta = parse_real(v, l, "eta"); }},
      {"eta_steps",
       [](RunConfig& c, std::string_view v, std::size_t l) { c.eta_steps = parse_integer<unsigned>(v, l, "eta_steps"); }},
      {"gain_max", [](RunConfig& c, std::string_view v, std::size_t l) { c.gain_max = parse_auto(v, l, "gain_max"); }},
      {"gain_steps",
       [](RunConfig& c, std::string_view v, std::size_t l) { c.gain_steps = parse_integer<unsigned>(v, l, "gain_steps"); }},
      {"cutoff", [](RunConfig& c, std::string_view v, std::size_t l) { c.cutoff = parse_auto(v, l, "cutoff"); }},
      {"shots",
       [](RunConfig& c, std::string_view v, std::size_t l) { c.shots = parse_integer<std::size_t>(v, l, "shots"); }},
      {"sets", [](RunConfig& c, std::string_view v, std::size_t l) { c.sets = parse_integer<unsigned>(v, l, "sets"); }},
      {"seed",
       [](RunConfig& c, std::string_view v, std::size_t l) { c.seed = parse_integer<std::uint64_t>(v, l, "seed"); }},
      {"workers",
       [](RunConfig& c, std::string_view v, std::size_t l) { c.workers = parse_integer<unsigned>(v, l, "workers"); }},
      {"bootstrap_reps",
       [](RunConfig& c, std::string_view v, std::size_t l) {
         c.bootstrap_reps = parse_integer<unsigned>(v, l, "bootstrap_reps");
       }},
      {"db_per_km",
       [](RunConfig& c, std::string_view v, std::size_t l) { c.db_per_km = parse_real(v, l, "db_per_km"); }},
      {"out", [](RunConfig& c, std::string_view v, std::size_t) { c.out = std::string(v); }},
  };
  return table;
}

}  // namespace

double RunConfig::resolved_gain_max() const {
  if (gain_max) return *gain_max;
  if (std::abs(eta - 0.1) < 1e-12) return 1.6;
  if (std::abs(eta - 0.5) < 1e-12) return 1.4;
  if (std::abs(eta - 1.0) < 1e-12) return 1.28;
  throw ConfigError("gain_max has no preset for eta = " + real_text(eta) + "; set it explicitly");
}

void RunConfig::validate() const {
  auto require = [](bool ok, const char* what) {
    if (!ok) throw ConfigError(what);
  };
  require(r >= 0.0 && r <= 25.0, "r must lie in [0, 25]");
  require(excess_noise >= 0.0, "excess_noise must be >= 0");
  require(eta >= 0.0 && eta <= 1.0, "eta must lie in [0, 1]");
  require(eta_steps >= 2, "eta_steps must be >= 2");
  require(!gain_max || (*gain_max >= 1.0), "gain_max must be >= 1");
  require(gain_steps >= 1, "gain_steps must be >= 1");
  require(!cutoff || *cutoff >= 0.0, "cutoff must be >= 0");
  require(shots >= 1 && sets >= 1, "shots and sets must be >= 1");
  require(workers >= 1, "workers must be >= 1");
  require(bootstrap_reps != 1, "bootstrap_reps must be 0 (off) or >= 2");
  require(db_per_km > 0.0, "db_per_km must be > 0");
}

RunConfig parse_config(std::istream& in, RunConfig base) {
  std::set<std::string, std::less<>> seen;
  std::string raw;
  std::size_t line = 0;
  while (std::getline(in, raw)) {
    ++line;
    std::string_view text = raw;
    if (const auto hash = text.find('#'); hash != std::string_view::npos) text = text.substr(0, hash);
    text = trim(text);
    if (text.empty()) continue;
    const auto eq = text.find('=');
    if (eq == std::string_view::npos) fail(line, "expected 'key = value'");
    const std::string_view key = trim(text.substr(0, eq));
    const std::string_view value = trim(text.substr(eq + 1));
    const auto it = setters().find(key);
    if (it == setters().end()) fail(line, "unknown key '" + std::string(key) + "'");
    if (!seen.insert(std::string(key)).second) fail(line, "repeated key '" + std::string(key) + "'");
    if (value.empty() && key != "out") fail(line, "missing value for " + std::string(key));
    it->second(base, value, line);
  }
  return base;
}

RunConfig load_config(const std::filesystem::path& path, RunConfig base) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path.string());
  try {
    return parse_config(in, std::move(base));
  } catch (const ConfigError& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
}

void write_config(std::ostream& out, const RunConfig& c) {
  out << "r = " << real_text(c.r) << '\n'
      << "excess_noise = " << real_text(c.excess_noise) << '\n'
      << "eta = " << real_text(c.eta) << '\n'
      << "eta_steps = " << c.eta_steps << '\n'
      << "gain_max = " << (c.gain_max ? real_text(*c.gain_max) : "auto") << '\n'
      << "gain_steps = " << c.gain_steps << '\n'
      << "cutoff = " << (c.cutoff ? real_text(*c.cutoff) : "auto") << '\n'
      << "shots = " << c.shots << '\n'
      << "sets = " << c.sets << '\n'
      << "seed = " << c.seed << '\n'
      << "workers = " << c.workers << '\n'
      << "bootstrap_reps = " << c.bootstrap_reps << '\n'
      << "db_per_km = " << real_text(c.db_per_km) << '\n'
      << "out = " << c.out << '\n';
}

}  // namespace gaussent::cli
