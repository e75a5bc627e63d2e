#include "gaussent/fock.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numeric>
#include <string>
#include <vector>

#include "gaussent/diagnostics.hpp"
#include "gaussent/errors.hpp"

namespace gaussent {
namespace {

using cd = std::complex<double>;

constexpr double kTruncationWarning = 1e-6;

void check_cutoff(int n_max) {
  if (n_max < 1 || n_max > 60) throw DomainError("photon-number cutoff must lie in [1, 60]");
}

std::vector<double> log_factorials(int n) {
  std::vector<double> lf(static_cast<std::size_t>(n) + 1, 0.0);
  for (int k = 1; k <= n; ++k) lf[k] = lf[k - 1] + std::log(static_cast<double>(k));
  return lf;
}

// <k - l| E_l |k> for the pure-loss channel of transmissivity eta.
double loss_amplitude(int k, int l, double eta, const std::vector<double>& lf) {
  if (l > k) return 0.0;
  if (eta >= 1.0) return l == 0 ? 1.0 : 0.0;
  if (eta <= 0.0) return l == k ? 1.0 : 0.0;
  const double log_binom = lf[k] - lf[l] - lf[k - l];
  return std::exp(0.5 * (log_binom + (k - l) * std::log(eta) + l * std::log1p(-eta)));
}

void finish(FockStateMatrix& out) {
  out.trace_deficit = 1.0 - out.rho.trace().real();
  out.truncation_warning = out.trace_deficit > kTruncationWarning;
  if (out.truncation_warning) {
    warn("Fock truncation at n_max = " + std::to_string(out.n_max) + " drops weight " + std::to_string(out.trace_deficit));
  }
}

// Connected components of the union sparsity pattern of the given matrices.
std::vector<std::vector<int>> blocks(const std::vector<const Eigen::MatrixXcd*>& ms) {
  const int n = static_cast<int>(ms.front()->rows());
  std::vector<int> parent(static_cast<std::size_t>(n));
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const auto* m : ms) {
    for (int j = 0; j < n; ++j) {
      for (int i = j + 1; i < n; ++i) {
        if ((*m)(i, j) != cd(0.0, 0.0)) {
          const int a = find(i);
          const int b = find(j);
          if (a != b) parent[a] = b;
        }
      }
    }
  }
  std::vector<std::vector<int>> groups(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) groups[find(i)].push_back(i);
  std::vector<std::vector<int>> out;
  for (auto& g : groups) {
    if (!g.empty()) out.push_back(std::move(g));
  }
  return out;
}

Eigen::MatrixXcd take(const Eigen::MatrixXcd& m, const std::vector<int>& idx) {
  const auto k = static_cast<Eigen::Index>(idx.size());
  Eigen::MatrixXcd out(k, k);
  for (Eigen::Index i = 0; i < k; ++i) {
    for (Eigen::Index j = 0; j < k; ++j) out(i, j) = m(idx[i], idx[j]);
  }
  return out;
}

Eigen::MatrixXcd normalized(const FockStateMatrix& s) {
  const double tr = s.rho.trace().real();
  if (!(tr > 0.0)) throw DomainError("density matrix has non-positive trace");
  return s.rho / tr;
}

double entropy_of(const Eigen::MatrixXcd& rho) {
  double s = 0.0;
  for (const auto& idx : blocks({&rho})) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(take(rho, idx), Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success) throw NumericError("eigen-solve failed for density matrix");
    for (Eigen::Index k = 0; k < es.eigenvalues().size(); ++k) {
      const double p = es.eigenvalues()(k);
      if (p > 0.0) s -= p * std::log(p);
    }
  }
  return s;
}

}  // namespace

FockStateMatrix fock_lossy_tmsv(double r, double eta_b, int n_max, double eta_a) {
  check_cutoff(n_max);
  if (!(r >= 0.0) || !std::isfinite(r)) throw DomainError("squeezing parameter must be finite and non-negative");
  if (!(eta_b >= 0.0 && eta_b <= 1.0) || !(eta_a >= 0.0 && eta_a <= 1.0)) {
    throw DomainError("transmissivity must lie in [0, 1]");
  }
  const auto lf = log_factorials(n_max);
  const double lam = std::tanh(r);
  std::vector<double> schmidt(static_cast<std::size_t>(n_max) + 1);
  for (int k = 0; k <= n_max; ++k) schmidt[k] = std::sqrt(1.0 - lam * lam) * std::pow(lam, k);

  FockStateMatrix out;
  out.n_max = n_max;
  const int dim = out.dim();
  Eigen::MatrixXd rho = Eigen::MatrixXd::Zero(dim, dim);
  const int la_max = eta_a < 1.0 ? n_max : 0;
  const int lb_max = eta_b < 1.0 ? n_max : 0;
  std::vector<int> idx;
  std::vector<double> amp;
  for (int la = 0; la <= la_max; ++la) {
    for (int lb = 0; lb <= lb_max; ++lb) {
      // (E_la (x) E_lb) sum_k s_k |k, k> = sum_k s_k e_a(k) e_b(k) |k - la, k - lb>.
      idx.clear();
      amp.clear();
      for (int k = std::max(la, lb); k <= n_max; ++k) {
        const double a = schmidt[k] * loss_amplitude(k, la, eta_a, lf) * loss_amplitude(k, lb, eta_b, lf);
        if (a == 0.0) continue;
        idx.push_back(FockStateMatrix::index(k - la, k - lb, n_max));
        amp.push_back(a);
      }
      for (std::size_t i = 0; i < idx.size(); ++i) {
        for (std::size_t j = 0; j < idx.size(); ++j) rho(idx[i], idx[j]) += amp[i] * amp[j];
      }
    }
  }
  out.rho = rho.cast<cd>();
  finish(out);
  return out;
}

FockStateMatrix fock_from_covariance(const CovarianceMatrix& v, int n_max) {
  check_cutoff(n_max);
  const Matrix4& s = v.entries();
  // Complex moments with a_k = (x_k + i p_k) / 2.
  Eigen::Matrix2cd adag_a;  // <a_i^dag a_j>
  Eigen::Matrix2cd a_a;     // <a_i a_j>
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      const double xx = s(2 * i, 2 * j);
      const double pp = s(2 * i + 1, 2 * j + 1);
      const double xp = s(2 * i, 2 * j + 1);
      const double px = s(2 * i + 1, 2 * j);
      adag_a(i, j) = cd(0.25 * (xx + pp) - (i == j ? 0.5 : 0.0), 0.25 * (xp - px));
      a_a(i, j) = cd(0.25 * (xx - pp), 0.25 * (xp + px));
    }
  }
  Eigen::Matrix4cd q;
  q.topLeftCorner<2, 2>() = adag_a;
  q.topRightCorner<2, 2>() = a_a.conjugate();
  q.bottomLeftCorner<2, 2>() = a_a;
  q.bottomRightCorner<2, 2>() = adag_a.conjugate();
  q += Eigen::Matrix4cd::Identity();

  const Eigen::Matrix4cd q_inv = q.inverse();
  Eigen::Matrix4cd x = Eigen::Matrix4cd::Zero();
  x.topRightCorner<2, 2>().setIdentity();
  x.bottomLeftCorner<2, 2>().setIdentity();
  const Eigen::Matrix4cd a = x * (Eigen::Matrix4cd::Identity() - q_inv).conjugate();
  const cd pref = 1.0 / std::sqrt(q.determinant());

  // Renormalized Hermite recursion: R_{k+e_i} = (sum_j A_ij sqrt(k_j) R_{k-e_j}) / sqrt(k_i + 1).
  const int d = n_max + 1;
  const std::size_t total = static_cast<std::size_t>(d) * d * d * d;
  std::vector<cd> r(total, cd(0.0, 0.0));
  const std::size_t stride[4] = {static_cast<std::size_t>(d) * d * d, static_cast<std::size_t>(d) * d,
                                 static_cast<std::size_t>(d), 1};
  std::vector<double> sqrt_int(static_cast<std::size_t>(d) + 1);
  for (int k = 0; k <= d; ++k) sqrt_int[k] = std::sqrt(static_cast<double>(k));
  r[0] = 1.0;
  int k[4];
  for (std::size_t flat = 1; flat < total; ++flat) {
    std::size_t rem = flat;
    for (int t = 0; t < 4; ++t) {
      k[t] = static_cast<int>(rem / stride[t]);
      rem %= stride[t];
    }
    if ((k[0] + k[1] + k[2] + k[3]) % 2 != 0) continue;
    int i = 0;
    while (k[i] == 0) ++i;
    const std::size_t prev = flat - stride[i];
    k[i] -= 1;
    cd acc(0.0, 0.0);
    for (int j = 0; j < 4; ++j) {
      if (k[j] == 0 || a(i, j) == cd(0.0, 0.0)) continue;
      acc += a(i, j) * sqrt_int[k[j]] * r[prev - stride[j]];
    }
    r[flat] = acc / sqrt_int[k[i] + 1];
  }

  FockStateMatrix out;
  out.n_max = n_max;
  out.rho = Eigen::MatrixXcd::Zero(out.dim(), out.dim());
  // With this index order the recursion yields the transpose of rho (= its conjugate).
  for (int m1 = 0; m1 < d; ++m1) {
    for (int m2 = 0; m2 < d; ++m2) {
      for (int n1 = 0; n1 < d; ++n1) {
        for (int n2 = 0; n2 < d; ++n2) {
          const std::size_t flat = m1 * stride[0] + m2 * stride[1] + n1 * stride[2] + n2 * stride[3];
          out.rho(FockStateMatrix::index(m1, m2, n_max), FockStateMatrix::index(n1, n2, n_max)) = std::conj(pref * r[flat]);
        }
      }
    }
  }
  finish(out);
  return out;
}

double fock_entropy(const FockStateMatrix& rho) {
  return entropy_of(normalized(rho));
}

double fock_reduced_entropy_a(const FockStateMatrix& rho) {
  const Eigen::MatrixXcd n = normalized(rho);
  const int d = rho.n_max + 1;
  Eigen::MatrixXcd red = Eigen::MatrixXcd::Zero(d, d);
  for (int a = 0; a < d; ++a) {
    for (int a2 = 0; a2 < d; ++a2) {
      for (int b = 0; b < d; ++b) {
        red(a, a2) += n(FockStateMatrix::index(a, b, rho.n_max), FockStateMatrix::index(a2, b, rho.n_max));
      }
    }
  }
  return entropy_of(red);
}

double fock_relative_entropy(const FockStateMatrix& s1, const FockStateMatrix& s2) {
  if (s1.n_max != s2.n_max) throw DomainError("density matrices have different cutoffs");
  const Eigen::MatrixXcd rho1 = normalized(s1);
  const Eigen::MatrixXcd rho2 = normalized(s2);
  constexpr double kEigenFloor = 1e-14;
  constexpr double kUnresolvedWeight = 1e-8;
  double value = 0.0;
  double unresolved = 0.0;
  for (const auto& idx : blocks({&rho1, &rho2})) {
    const Eigen::MatrixXcd b1 = take(rho1, idx);
    const Eigen::MatrixXcd b2 = take(rho2, idx);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> e1(b1, Eigen::EigenvaluesOnly);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> e2(b2);
    if (e1.info() != Eigen::Success || e2.info() != Eigen::Success) {
      throw NumericError("eigen-solve failed for density matrix");
    }
    for (Eigen::Index k = 0; k < e1.eigenvalues().size(); ++k) {
      const double p = e1.eigenvalues()(k);
      if (p > 0.0) value += p * std::log(p);
    }
    // tr(rho1 ln rho2) = sum_j ln(mu_j) <u_j| rho1 |u_j>.
    const Eigen::MatrixXcd& u = e2.eigenvectors();
    const double mu_max = std::max(e2.eigenvalues().maxCoeff(), 1e-300);
    for (Eigen::Index j = 0; j < u.cols(); ++j) {
      const double weight = (u.col(j).adjoint() * b1 * u.col(j))(0, 0).real();
      const double mu = e2.eigenvalues()(j);
      const double floor = kEigenFloor * mu_max;
      if (mu <= floor) {
        // Below the solver's resolution: count at the floor and track the weight.
        unresolved += std::max(0.0, weight);
        value -= weight * std::log(floor);
        continue;
      }
      value -= weight * std::log(mu);
    }
  }
  if (unresolved > kUnresolvedWeight) {
    throw RankDeficiencyError("second state is rank deficient where the first has support");
  }
  return std::max(0.0, value);
}

Matrix4 fock_quadrature_covariance(const FockStateMatrix& s) {
  const int d = s.n_max + 1;
  const int dim = s.dim();
  const Eigen::MatrixXcd rho = normalized(s);
  Eigen::MatrixXd a1 = Eigen::MatrixXd::Zero(dim, dim);
  Eigen::MatrixXd a2 = Eigen::MatrixXd::Zero(dim, dim);
  for (int a = 0; a < d; ++a) {
    for (int b = 0; b < d; ++b) {
      if (a > 0) a1(FockStateMatrix::index(a - 1, b, s.n_max), FockStateMatrix::index(a, b, s.n_max)) = std::sqrt(a);
      if (b > 0) a2(FockStateMatrix::index(a, b - 1, s.n_max), FockStateMatrix::index(a, b, s.n_max)) = std::sqrt(b);
    }
  }
  const cd i(0.0, 1.0);
  std::vector<Eigen::MatrixXcd> ops;
  for (const auto* low : {&a1, &a2}) {
    const Eigen::MatrixXcd l = low->cast<cd>();
    ops.push_back(l + l.adjoint());            // x
    ops.push_back(-i * (l - l.adjoint()));     // p
  }
  Matrix4 cov;
  for (int r = 0; r < 4; ++r) {
    for (int c = 0; c < 4; ++c) {
      const Eigen::MatrixXcd sym = 0.5 * (ops[r] * ops[c] + ops[c] * ops[r]);
      cov(r, c) = (rho * sym).trace().real();
    }
  }
  return cov;
}

}  // namespace gaussent
