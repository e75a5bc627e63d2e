#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>

#include "gaussent/covariance.hpp"

namespace gaussent {

// Covariance file format (line oriented, '#' starts a comment line):
//
//   ordering: xpxp
//   hbar: 2
//   row: v00 v01 v02 v03
//   row: v10 v11 v12 v13
//   row: v20 v21 v22 v23
//   row: v30 v31 v32 v33
//
// Values are written with 17 significant digits, so a write/read round trip is exact.

void write_covariance(std::ostream& out, const CovarianceMatrix& v);
CovarianceMatrix read_covariance(std::istream& in);

void save_covariance(const std::filesystem::path& path, const CovarianceMatrix& v);
CovarianceMatrix load_covariance(const std::filesystem::path& path);

/// Shortest round-trip-exact decimal ("%.17g").
std::string format_exact(double x);

/// Parses a complete token as a double; throws ParseError(line, ...) otherwise.
double parse_double(std::string_view token, std::size_t line);

}  // namespace gaussent
