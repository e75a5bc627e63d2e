#include "gaussent/nelder_mead.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <vector>

namespace gaussent {
namespace {

struct Simplex {
  std::vector<Eigen::VectorXd> x;
  std::vector<double> f;
};

Simplex make_simplex(const std::function<double(const Eigen::VectorXd&)>& fn, const Eigen::VectorXd& x0,
                     double step, std::size_t& evals) {
  const auto n = x0.size();
  Simplex s;
  s.x.push_back(x0);
  s.f.push_back(fn(x0));
  ++evals;
  for (Eigen::Index i = 0; i < n; ++i) {
    Eigen::VectorXd xi = x0;
    xi(i) += step * std::max(1.0, std::abs(x0(i)));
    s.x.push_back(xi);
    s.f.push_back(fn(xi));
    ++evals;
  }
  return s;
}

void order(Simplex& s) {
  std::vector<std::size_t> idx(s.x.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return s.f[a] < s.f[b]; });
  Simplex t;
  for (auto i : idx) {
    t.x.push_back(s.x[i]);
    t.f.push_back(s.f[i]);
  }
  s = std::move(t);
}

double diameter(const Simplex& s) {
  double d = 0.0;
  for (std::size_t i = 1; i < s.x.size(); ++i) d = std::max(d, (s.x[i] - s.x[0]).cwiseAbs().maxCoeff());
  return d;
}

}  // namespace

NelderMeadResult nelder_mead(const std::function<double(const Eigen::VectorXd&)>& fn, const Eigen::VectorXd& x0,
                             const NelderMeadOptions& opt) {
  const double n = static_cast<double>(x0.size());
  // Gao & Han adaptive parameters.
  const double alpha = 1.0;
  const double beta = 1.0 + 2.0 / n;
  const double gamma = 0.75 - 1.0 / (2.0 * n);
  const double delta = 1.0 - 1.0 / n;

  NelderMeadResult res{x0, 0.0, 0, 0, 0};
  std::size_t& evals = res.evaluations;
  Eigen::VectorXd start = x0;
  double step = opt.initial_step;
  double previous_best = std::numeric_limits<double>::infinity();

  for (std::size_t round = 0; round <= opt.max_restarts; ++round) {
    Simplex s = make_simplex(fn, start, step, evals);
    order(s);
    const std::size_t last = s.x.size() - 1;
    while (evals < opt.max_evaluations) {
      ++res.iterations;
      const bool flat = std::abs(s.f[last] - s.f[0]) <= opt.f_tolerance;
      if (flat && diameter(s) <= opt.x_tolerance) break;
      if (flat && std::isinf(s.f[0])) break;

      Eigen::VectorXd centroid = Eigen::VectorXd::Zero(x0.size());
      for (std::size_t i = 0; i < last; ++i) centroid += s.x[i];
      centroid /= static_cast<double>(last);

      const Eigen::VectorXd xr = centroid + alpha * (centroid - s.x[last]);
      const double fr = fn(xr);
      ++evals;
      if (fr < s.f[0]) {
        const Eigen::VectorXd xe = centroid + beta * (xr - centroid);
        const double fe = fn(xe);
        ++evals;
        if (fe < fr) {
          s.x[last] = xe;
          s.f[last] = fe;
        } else {
          s.x[last] = xr;
          s.f[last] = fr;
        }
      } else if (fr < s.f[last - 1]) {
        s.x[last] = xr;
        s.f[last] = fr;
      } else {
        const bool outside = fr < s.f[last];
        const Eigen::VectorXd xc =
            outside ? Eigen::VectorXd(centroid + gamma * (xr - centroid)) : Eigen::VectorXd(centroid - gamma * (centroid - s.x[last]));
        const double fc = fn(xc);
        ++evals;
        if (fc < (outside ? fr : s.f[last])) {
          s.x[last] = xc;
          s.f[last] = fc;
        } else {
          for (std::size_t i = 1; i <= last; ++i) {
            s.x[i] = s.x[0] + delta * (s.x[i] - s.x[0]);
            s.f[i] = fn(s.x[i]);
            ++evals;
          }
        }
      }
      order(s);
    }
    const bool improved = s.f[0] < previous_best - opt.restart_gain;
    if (s.f[0] <= previous_best) {
      res.x = s.x[0];
      res.value = s.f[0];
    }
    if (round > 0) ++res.restarts;
    if (!improved || evals >= opt.max_evaluations) break;
    previous_best = s.f[0];
    start = s.x[0];
    step = std::max(opt.x_tolerance * 10.0, 0.5 * step);
  }
  return res;
}

}  // namespace gaussent
