#pragma once

#include <Eigen/Dense>

#include <cstdint>

namespace gaussent {

// Conventions: quadratures ordered (x_A, p_A, x_B, p_B); hbar = 2, so the vacuum
// covariance is the identity.

using Matrix2 = Eigen::Matrix2d;
using Matrix4 = Eigen::Matrix4d;

inline constexpr double kSymmetryTolerance = 1e-12;
inline constexpr double kPhysicalityTolerance = 1e-9;

enum class Mode { A, B };

/// Two-mode zero-mean Gaussian state, described by its 4x4 covariance matrix.
/// Construction checks symmetry (and finiteness) but not physicality; use
/// validate_physical() or require_physical() for that.
class CovarianceMatrix {
 public:
  CovarianceMatrix();  // vacuum
  explicit CovarianceMatrix(const Matrix4& entries);

  const Matrix4& entries() const noexcept { return v_; }
  double operator()(int i, int j) const { return v_(i, j); }

  Matrix2 block_a() const { return v_.topLeftCorner<2, 2>(); }
  Matrix2 block_b() const { return v_.bottomRightCorner<2, 2>(); }
  Matrix2 correlations() const { return v_.topRightCorner<2, 2>(); }

  /// S V S^T.
  CovarianceMatrix transformed(const Matrix4& s) const;

  friend bool operator==(const CovarianceMatrix& a, const CovarianceMatrix& b) { return a.v_ == b.v_; }

 private:
  Matrix4 v_;
};

/// The block-diagonal symplectic form diag(J, J), J = [[0, 1], [-1, 0]].
struct SymplecticForm {
  static Matrix4 omega();
  static bool is_symplectic(const Matrix4& s, double tol = 1e-10);
};

/// Standard form (m, n, c1, c2): M = m I, N = n I, C = diag(c1, c2), with c1 >= |c2|.
///
/// gap_x = m n - c1^2 and gap_p = m n - c2^2 are carried explicitly. For strongly
/// squeezed states both are tiny differences of huge numbers, so constructors that
/// know them analytically (lossy_tmsv_form) pass them in, and every measure reads
/// det(sigma) and conditional variances from the gaps.
struct StandardFormParams {
  double m = 1.0;
  double n = 1.0;
  double c1 = 0.0;
  double c2 = 0.0;
  double gap_x = 1.0;
  double gap_p = 1.0;

  static StandardFormParams from_entries(double m, double n, double c1, double c2);
  static StandardFormParams with_gaps(double m, double n, double c1, double c2, double gap_x, double gap_p);

  double det_sigma() const noexcept { return gap_x * gap_p; }
  double det_c() const noexcept { return c1 * c2; }
  /// det M + det N + 2 det C, written as a sum of non-negative terms.
  double delta() const noexcept;
  /// det M + det N - 2 det C.
  double delta_tilde() const noexcept { return m * m + n * n - 2.0 * c1 * c2; }
  bool quadrature_symmetric(double tol) const noexcept;

  CovarianceMatrix matrix() const;
};

/// Standard form together with a local symplectic L = L_A (+) L_B such that
/// V = L * params.matrix() * L^T.
struct StandardFormDecomposition {
  StandardFormParams params;
  Matrix4 local;
};

struct SymplecticPair {
  double nu_plus;
  double nu_minus;
};

struct PtSpectrum {
  double nu_plus;
  double nu_minus;
  double delta_tilde;
};

CovarianceMatrix tmss(double r);

/// Quadrature-symmetric standard-form matrix with c1 = c, c2 = -c.
CovarianceMatrix quadrature_symmetric_state(double m, double n, double c);

/// Standard form of tmss(r) after loss eta on mode B, with the gaps evaluated
/// analytically so that it stays accurate for r in the tens.
StandardFormParams lossy_tmsv_form(double r, double eta);

bool validate_physical(const CovarianceMatrix& v);

/// Accept states whose least symplectic eigenvalue is at least 1 - tolerance;
/// states inside [1 - tolerance, 1) are moved onto the boundary by adding the smallest
/// isotropic noise that does so, with a warning. Throws PhysicalityError otherwise.
CovarianceMatrix require_physical(const CovarianceMatrix& v, double tolerance = kPhysicalityTolerance);

StandardFormParams standard_form(const CovarianceMatrix& v);
StandardFormDecomposition standard_form_decomposition(const CovarianceMatrix& v);

CovarianceMatrix partial_transpose(const CovarianceMatrix& v);

/// Numerical Williamson spectrum (Hermitian eigenproblem), descending.
SymplecticPair symplectic_eigenvalues(const CovarianceMatrix& v);

/// Partially transposed spectrum from the local invariants.
PtSpectrum pt_spectrum(const CovarianceMatrix& v);
PtSpectrum pt_spectrum(const StandardFormParams& p);

/// Symplectic spectrum from the local invariants (same closed form, no transpose).
SymplecticPair symplectic_eigenvalues(const StandardFormParams& p);

CovarianceMatrix loss_channel(const CovarianceMatrix& v, double eta, Mode mode);

/// Isotropic additive noise: V + epsilon I.
CovarianceMatrix add_noise(const CovarianceMatrix& v, double epsilon);

// Elementary symplectic matrices (xpxp).
Matrix2 rotation(double theta);
Matrix2 single_mode_squeezer(double r);
Matrix4 local_symplectic(const Matrix2& a, const Matrix2& b);
Matrix4 two_mode_squeezer(double r);
/// Beamsplitter with amplitude transmissivity sqrt(t) mixing modes A and B.
Matrix4 beamsplitter(double t);

/// Physical, generically asymmetric state S diag(nu1, nu1, nu2, nu2) S^T with
/// nu in [1, 5] and a seeded random symplectic S.
CovarianceMatrix random_physical_state(std::uint64_t seed);

struct RandomStateSample {
  CovarianceMatrix state;
  double nu1;
  double nu2;
  Matrix4 symplectic;
};

RandomStateSample random_williamson_state(std::uint64_t seed);

/// Random pure state S S^T.
CovarianceMatrix random_pure_state(std::uint64_t seed);

/// Random symmetric (m = n, c1 = -c2) physical state.
CovarianceMatrix random_symmetric_state(std::uint64_t seed);

/// Random physical quadrature-symmetric state (m, n, c, -c), entangled or not, with
/// random local rotations applied unless `standard` is set.
CovarianceMatrix random_quadrature_symmetric_state(std::uint64_t seed, bool standard = false);

}  // namespace gaussent
