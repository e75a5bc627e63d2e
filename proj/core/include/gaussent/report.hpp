#pragma once

#include <iosfwd>
#include <limits>
#include <string>

#include "gaussent/covariance.hpp"
#include "gaussent/gree.hpp"

namespace gaussent {

/// All measures of one state, in nats where entropic. The first four fields describe the
/// protocol setting the state came from and are left to the caller.
struct MeasureReport {
  double eta = std::numeric_limits<double>::quiet_NaN();
  double gain = 1.0;
  double cutoff = 0.0;
  double p_success = 1.0;

  double logneg = 0.0;
  double eof = 0.0;
  double r0 = 0.0;
  double gree = 0.0;
  double squashed_ub = 0.0;
  double ci = 0.0;
  double rci = 0.0;
  double duan = 0.0;
  double steer_fwd = 0.0;
  double steer_rev = 0.0;
  bool separable = true;

  bool eof_exact = true;
  bool gree_converged = true;
};

/// Evaluates every measure. A state that is not quadrature-symmetric is symmetrized
/// before the squashed bound; if the channel fit still fails that column is NaN.
MeasureReport evaluate_measures(const CovarianceMatrix& v, const GreeOptions& gree_options = {});

/// Comma-separated column names in the fixed report order:
/// eta,gain,cutoff,p_success,logneg,eof,r0,gree,squashed_ub,ci,rci,duan,steer_fwd,steer_rev,separable
std::string report_csv_header();

/// The report as one CSV row (no newline); reals as %.12g, separable as 0/1.
std::string report_csv_row(const MeasureReport& r);

/// Human-readable multi-line summary.
void write_report_summary(std::ostream& out, const MeasureReport& r);

/// Formats a real as %.12g ("nan", "inf" and "-inf" for non-finite values).
std::string format_real(double x);

}  // namespace gaussent
