#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "isospec/certificate.hpp"
#include "isospec/types.hpp"

namespace isospec {

/// Default tolerances of the certificates. Every field can be overridden
/// from the command line as --tol-<name>.
struct Tolerances {
  double iso = 5e-5;       // max |mu_n - mu_n^0|, absolute
  double norming = 1e-4;   // norming-constant comparisons, relative
  double sum = 1e-6;       // vanishing sums, scaled by 1 + sum |c_n|
  double kappa = 1e-4;     // characteristic-function identities, relative
  double even = 1e-10;     // max |q(x) - q(pi - x)|, scaled by 1 + max |q|
  double end = 1e-5;       // max |phi(pi, mu_n) - (-1)^n|
  double angle = 1e-10;    // hypothesis checks on alpha and beta
  double potential = 1e-3; // max |q - q0| when the conclusion is tested directly
};

struct CertificateOptions {
  /// Mirrored orientation: the fixed endpoint is beta instead of alpha.
  bool fix_beta = false;
  /// Right-endpoint variant: compare b_n (resp. psi(0, mu_n)) instead of a_n (kappa_n).
  /// Only the one-sidedness and direct-comparison checks run.
  bool right_endpoint = false;
};

/// Spectrum equal, a_n one-sided, alpha fixed  =>  a_n = a_n^0, q = q0, beta = beta0.
CertificateReport thm12_certificate(const OperatorSpec& base, const OperatorSpec& candidate, int n_max,
                                    const Tolerances& tol = {}, const CertificateOptions& opts = {});

/// Spectrum of L(q, alpha, pi - alpha) equal to that of L(0, alpha, pi - alpha)  =>  q = 0.
CertificateReport ambarzumyan_certificate(double alpha, const OperatorSpec& candidate, int n_max,
                                          const Tolerances& tol = {});

/// Even (q symmetric, alpha + beta = pi)  <=>  phi(pi, mu_n) = (-1)^n.
CertificateReport levinson_even_check(const OperatorSpec& op, int n_max, const Tolerances& tol = {});

/// Residuals of kappa_n psi(0, mu_n) = 1, a_n = |phi(pi)||Phi'|, b_n = |psi(0)||Psi'|,
/// a_n = |kappa_n||Phi'| and b_n = a_n / kappa_n^2.
CertificateReport kappa_relations_check(const OperatorSpec& op, int n_max, const Tolerances& tol = {});

/// Spectrum equal, |kappa_n| one-sided, alpha fixed  =>  kappa_n = kappa_n^0, q = q0, beta = beta0.
CertificateReport thm52_certificate(const OperatorSpec& base, const OperatorSpec& candidate, int n_max,
                                    const Tolerances& tol = {}, const CertificateOptions& opts = {});

/// Equal eigenvalues and norming constants  =>  identical operators (smooth data only).
CertificateReport marchenko_consistency(const OperatorSpec& base, const OperatorSpec& candidate,
                                        int n_max, const Tolerances& tol = {});

/// The three sums of the Ambarzumyan argument for coefficients c against base
/// norming constants a0:
///   S_alpha = sum c_n,  S_beta = sum c_n / (1 + c_n a_n^0),  G = sum c_n^2 a_n^0 / (1 + c_n a_n^0).
/// S_alpha - S_beta = G term by term; every G term is >= 0.
struct AmbarzumyanSums {
  double sum_alpha = 0.0;
  double sum_beta = 0.0;
  double gap = 0.0;
  std::vector<double> gap_terms;
};

/// Throws admissibility error when 1 + c_n a_n^0 <= 0, consistency error if
/// a G term comes out negative.
AmbarzumyanSums ambarzumyan_sums(const PerturbationSeq& c, std::span<const double> a0);

/// Scan of the isospectral family of L(0, alpha, pi - alpha) along random
/// rays c = t d with sum d_n = 0, |d| = 1 (so S_alpha = 0, alpha preserved).
struct FamilyScan {
  int rays = 0;
  int samples = 0;
  /// min over t != 0 of G / |c|^2; > 0 means S_beta = 0 only at c = 0.
  double min_curvature = 0.0;
  /// max |S_alpha - S_beta - G| over every sample.
  double max_identity_gap = 0.0;
  /// Nonzero samples where |S_beta| fell below the sum tolerance.
  int nonzero_solutions = 0;
  std::vector<double> base_norming;
};

FamilyScan ambarzumyan_family_scan(double alpha, const Grid& grid, int n_max, int rays,
                                   std::uint64_t seed, const Tolerances& tol = {});

/// max over the nodes of the finer grid of |q1 - q2|.
double max_potential_difference(const Potential& q1, const Potential& q2);

}  // namespace isospec
