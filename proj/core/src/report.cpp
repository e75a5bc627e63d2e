#include "gaussent/report.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>

#include "gaussent/diagnostics.hpp"
#include "gaussent/errors.hpp"
#include "gaussent/measures.hpp"
#include "gaussent/squashed.hpp"

namespace gaussent {

MeasureReport evaluate_measures(const CovarianceMatrix& v, const GreeOptions& gree_options) {
  const StandardFormParams p = standard_form(v);
  MeasureReport r;
  r.logneg = log_negativity(p);
  const EofResult eof = eof_quadrature_symmetric(p);
  r.eof = eof.eof_nats;
  r.r0 = eof.r0;
  r.eof_exact = eof.exact;
  const GreeResult g = gree(v, gree_options);
  r.gree = g.gree_nats;
  r.gree_converged = g.converged;
  try {
    r.squashed_ub = squashed_upper_bound(p.quadrature_symmetric(1e-6) ? v : symmetrize(v));
  } catch (const DecompositionError& e) {
    warn(std::string("squashed bound unavailable: ") + e.what());
    r.squashed_ub = std::numeric_limits<double>::quiet_NaN();
  }
  r.ci = coherent_information(p);
  r.rci = reverse_coherent_information(p);
  r.duan = duan_sum(p);
  const SteeringResult s = reid_steering(p);
  r.steer_fwd = s.forward_product;
  r.steer_rev = s.reverse_product;
  r.separable = ppt_separable(v);
  return r;
}

std::string format_real(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

std::string report_csv_header() {
  return "eta,gain,cutoff,p_success,logneg,eof,r0,gree,squashed_ub,ci,rci,duan,steer_fwd,steer_rev,separable";
}

std::string report_csv_row(const MeasureReport& r) {
  std::string row;
  for (double x : {r.eta, r.gain, r.cutoff, r.p_success, r.logneg, r.eof, r.r0, r.gree, r.squashed_ub, r.ci, r.rci,
                   r.duan, r.steer_fwd, r.steer_rev}) {
    row += format_real(x);
    row += ',';
  }
  row += r.separable ? '1' : '0';
  return row;
}

void write_report_summary(std::ostream& out, const MeasureReport& r) {
  auto line = [&](const char* name, double value, const char* note = "") {
    out << "  " << name << " = " << format_real(value) << note << '\n';
  };
  out << "measures (nats):\n";
  line("log negativity              ", r.logneg);
  line("entanglement of formation   ", r.eof, r.eof_exact ? "" : "  (lower bound)");
  line("minimal two-mode squeezing  ", r.r0);
  line("Gaussian REE                ", r.gree, r.gree_converged ? "" : "  (multistart not converged)");
  line("squashed upper bound        ", r.squashed_ub);
  line("coherent information        ", r.ci);
  line("reverse coherent information", r.rci);
  out << "criteria:\n";
  line("Duan sum (< 2 entangled)    ", r.duan);
  line("Reid product A->B (< 1)     ", r.steer_fwd);
  line("Reid product B->A (< 1)     ", r.steer_rev);
  out << "  PPT separable                = " << (r.separable ? "yes" : "no") << '\n';
}

}  // namespace gaussent
