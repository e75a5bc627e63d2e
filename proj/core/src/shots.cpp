#include "gaussent/shots.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <string>
#include <string_view>

#include "gaussent/covariance_io.hpp"
#include "gaussent/errors.hpp"
#include "gaussent/parallel.hpp"
#include "gaussent/rng.hpp"

namespace gaussent {
namespace {

constexpr std::string_view kHeader = "shot_id,alice_basis,alice_outcome,bob_x,bob_p";

}  // namespace

std::vector<ShotRecord> synth_shots(const CovarianceMatrix& v, std::size_t n, std::uint64_t seed, unsigned workers) {
  if (n == 0) throw DomainError("shot count must be positive");
  const Eigen::LLT<Matrix4> llt(v.entries());
  if (llt.info() != Eigen::Success) throw NumericError("covariance matrix has no Cholesky factor");
  const Matrix4 l = llt.matrixL();
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);

  std::vector<ShotRecord> out(n);
  const std::size_t chunks = (n + kShotChunk - 1) / kShotChunk;
  parallel_for(chunks, workers, [&](std::size_t c) {
    Rng rng(derive_seed(seed, c));
    const std::size_t begin = c * kShotChunk;
    const std::size_t end = std::min(n, begin + kShotChunk);
    Eigen::Vector4d z;
    for (std::size_t i = begin; i < end; ++i) {
      for (int k = 0; k < 4; ++k) z(k) = rng.normal();
      const Eigen::Vector4d q = l * z;
      const double vac_x = rng.normal();
      const double vac_p = rng.normal();
      const bool p_basis = (rng.bits() >> 63) != 0;
      ShotRecord& s = out[i];
      s.shot_id = i;
      s.alice_basis = p_basis ? AliceBasis::P : AliceBasis::X;
      s.alice_outcome = p_basis ? q(1) : q(0);
      s.bob_x = (q(2) + vac_x) * inv_sqrt2;
      s.bob_p = (q(3) - vac_p) * inv_sqrt2;
    }
  });
  return out;
}

void write_shots(std::ostream& out, const std::vector<ShotRecord>& records) {
  out << kHeader << '\n';
  for (const auto& s : records) {
    out << s.shot_id << ',' << (s.alice_basis == AliceBasis::X ? 'X' : 'P') << ',' << format_exact(s.alice_outcome) << ','
        << format_exact(s.bob_x) << ',' << format_exact(s.bob_p) << '\n';
  }
}

std::vector<ShotRecord> read_shots(std::istream& in) {
  std::string line;
  std::size_t lineno = 0;
  if (!std::getline(in, line)) throw ParseError(1, "empty shot file");
  ++lineno;
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != kHeader) throw ParseError(lineno, "expected header '" + std::string(kHeader) + "'");

  std::vector<ShotRecord> out;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::string_view fields[5];
    std::size_t count = 0;
    std::size_t start = 0;
    const std::string_view text(line);
    while (true) {
      const auto comma = text.find(',', start);
      if (count == 5) throw ParseError(lineno, "too many fields");
      fields[count++] = text.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start);
      if (comma == std::string_view::npos) break;
      start = comma + 1;
    }
    if (count != 5) throw ParseError(lineno, "expected 5 fields, got " + std::to_string(count));

    ShotRecord s;
    const auto id = fields[0];
    const auto [ptr, ec] = std::from_chars(id.data(), id.data() + id.size(), s.shot_id);
    if (id.empty() || ec != std::errc() || ptr != id.data() + id.size()) {
      throw ParseError(lineno, "invalid shot_id '" + std::string(id) + "'");
    }
    if (fields[1] == "X") {
      s.alice_basis = AliceBasis::X;
    } else if (fields[1] == "P") {
      s.alice_basis = AliceBasis::P;
    } else {
      throw ParseError(lineno, "alice_basis must be X or P, got '" + std::string(fields[1]) + "'");
    }
    s.alice_outcome = parse_double(fields[2], lineno);
    s.bob_x = parse_double(fields[3], lineno);
    s.bob_p = parse_double(fields[4], lineno);
    if (!std::isfinite(s.alice_outcome) || !std::isfinite(s.bob_x) || !std::isfinite(s.bob_p)) {
      throw ParseError(lineno, "non-finite value");
    }
    out.push_back(s);
  }
  return out;
}

void save_shots(const std::filesystem::path& path, const std::vector<ShotRecord>& records) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  write_shots(out, records);
}

std::vector<ShotRecord> load_shots(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  return read_shots(in);
}

}  // namespace gaussent
