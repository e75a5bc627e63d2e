#pragma once

#include "gaussent/covariance.hpp"

#include <Eigen/Dense>

namespace gaussent {

// All entropic quantities are in nats.

/// g(nu) = ((nu+1)/2) ln((nu+1)/2) - ((nu-1)/2) ln((nu-1)/2); zero for nu < 1 + 1e-12.
double entropy_kernel(double nu);

double vn_entropy(const CovarianceMatrix& v);

/// Entropy of an n-mode covariance matrix.
double vn_entropy(const Eigen::MatrixXd& v);

double vn_entropy(const StandardFormParams& p);

/// Entropy of either reduction of a pure state.
double entanglement_entropy(const CovarianceMatrix& v);

/// E_V of tmss(r) in closed form: cosh^2 r ln cosh^2 r - sinh^2 r ln sinh^2 r.
double tmss_entanglement_entropy(double r);

double log_negativity(const CovarianceMatrix& v);
double log_negativity(const StandardFormParams& p);

bool ppt_separable(const CovarianceMatrix& v);

struct EofResult {
  double eof_nats;
  double r0;
  double kappa;
  double lambda_plus;
  double lambda_minus;
  bool exact;
};

/// Analytic entanglement of formation from the minimal two-mode squeezing r0.
/// Exact for quadrature-symmetric states (|c1 + c2| < 1e-6, symmetrized first);
/// otherwise evaluated with the general-state invariants and flagged as a lower bound.
EofResult eof_quadrature_symmetric(const CovarianceMatrix& v);
EofResult eof_quadrature_symmetric(const StandardFormParams& p);

/// eof_nats for a given r0.
double eof_from_r0(double r0);

struct ExtractableSqueezing {
  double min_variance;
  double transmissivity;
};

/// Interfere the two modes on a beamsplitter of transmissivity T (mode B first
/// rotated by a quarter period) and minimize the output quadrature variance over T.
ExtractableSqueezing max_extractable_squeezing(const CovarianceMatrix& v);

/// Scale-optimized Duan sum; below 2 certifies inseparability.
double duan_sum(const CovarianceMatrix& v);
double duan_sum(const StandardFormParams& p);

struct SteeringResult {
  double forward_product;  // V(x_B|x_A) V(p_B|p_A): A steers B when < 1
  double reverse_product;  // V(x_A|x_B) V(p_A|p_B): B steers A when < 1
  double var_xb_given_xa;
  double var_pb_given_pa;
  double var_xa_given_xb;
  double var_pa_given_pb;
};

SteeringResult reid_steering(const CovarianceMatrix& v);
SteeringResult reid_steering(const StandardFormParams& p);

/// S(B) - S(AB).
double coherent_information(const CovarianceMatrix& v);
double coherent_information(const StandardFormParams& p);

/// S(A) - S(AB).
double reverse_coherent_information(const CovarianceMatrix& v);
double reverse_coherent_information(const StandardFormParams& p);

}  // namespace gaussent
