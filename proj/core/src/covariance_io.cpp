#include "gaussent/covariance_io.hpp"

#include <array>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <vector>

#include "gaussent/errors.hpp"

namespace gaussent {
namespace {

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string_view> split_ws(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
    const std::size_t start = i;
    while (i < s.size() && s[i] != ' ' && s[i] != '\t') ++i;
    if (i > start) out.push_back(s.substr(start, i - start));
  }
  return out;
}

}  // namespace

std::string format_exact(double x) {
  std::array<char, 32> buf{};
  std::snprintf(buf.data(), buf.size(), "%.17g", x);
  return buf.data();
}

double parse_double(std::string_view token, std::size_t line) {
  token = trim(token);
  if (!token.empty() && token.front() == '+') token.remove_prefix(1);
  double value = 0.0;
  const auto* end = token.data() + token.size();
  const auto [ptr, ec] = std::from_chars(token.data(), end, value);
  if (token.empty() || ec != std::errc() || ptr != end) {
    throw ParseError(line, "expected a number, got '" + std::string(token) + "'");
  }
  return value;
}

void write_covariance(std::ostream& out, const CovarianceMatrix& v) {
  out << "# two-mode covariance matrix, vacuum = identity\n";
  out << "ordering: xpxp\n";
  out << "hbar: 2\n";
  for (int i = 0; i < 4; ++i) {
    out << "row:";
    for (int j = 0; j < 4; ++j) out << ' ' << format_exact(v(i, j));
    out << '\n';
  }
}

CovarianceMatrix read_covariance(std::istream& in) {
  bool have_ordering = false;
  bool have_hbar = false;
  int rows = 0;
  Matrix4 m = Matrix4::Zero();
  std::string raw;
  std::size_t line = 0;
  while (std::getline(in, raw)) {
    ++line;
    std::string_view text = raw;
    text = trim(text.substr(0, text.find('#')));
    if (text.empty()) continue;
    const auto colon = text.find(':');
    if (colon == std::string_view::npos) throw ParseError(line, "expected 'key: value'");
    const std::string_view key = trim(text.substr(0, colon));
    const std::string_view value = trim(text.substr(colon + 1));
    if (key == "ordering") {
      if (value != "xpxp") throw ParseError(line, "unsupported ordering '" + std::string(value) + "', expected xpxp");
      have_ordering = true;
    } else if (key == "hbar") {
      if (parse_double(value, line) != 2.0) throw ParseError(line, "unsupported hbar '" + std::string(value) + "', expected 2");
      have_hbar = true;
    } else if (key == "row") {
      if (rows == 4) throw ParseError(line, "more than four rows");
      const auto tokens = split_ws(value);
      if (tokens.size() != 4) throw ParseError(line, "row needs 4 values, got " + std::to_string(tokens.size()));
      for (int j = 0; j < 4; ++j) m(rows, j) = parse_double(tokens[static_cast<std::size_t>(j)], line);
      ++rows;
    } else {
      throw ParseError(line, "unknown key '" + std::string(key) + "'");
    }
  }
  if (!have_ordering) throw ParseError(0, "missing 'ordering' header");
  if (!have_hbar) throw ParseError(0, "missing 'hbar' header");
  if (rows != 4) throw ParseError(0, "expected 4 rows, got " + std::to_string(rows));
  try {
    return CovarianceMatrix(m);
  } catch (const DomainError& e) {
    throw ParseError(0, e.what());
  }
}

void save_covariance(const std::filesystem::path& path, const CovarianceMatrix& v) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  write_covariance(out, v);
}

CovarianceMatrix load_covariance(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  return read_covariance(in);
}

}  // namespace gaussent
