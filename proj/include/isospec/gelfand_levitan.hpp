#pragma once

#include <vector>

#include <Eigen/Dense>

#include "isospec/forward_solver.hpp"
#include "isospec/nystrom.hpp"
#include "isospec/stencil.hpp"
#include "isospec/types.hpp"

namespace isospec {

/// F(x_i, y_j) = sum_n c_n phi0(x_i, mu_n) phi0(y_j, mu_n) on the GL grid.
struct KernelF {
  Grid gl_grid;
  Eigen::MatrixXd values;
  SpectrumTable base_spectrum;
  PerturbationSeq coeffs;
};

/// Discrete solution of  K(x,y) + F(x,y) + int_0^x K(x,t) F(t,y) dt = 0.
struct GLSolution {
  Grid gl_grid;
  Eigen::MatrixXd K;                     // K(x_i, y_j) for j <= i
  std::vector<double> diag;              // K(x_i, x_i)
  std::vector<double> diag_derivative;   // d/dx K(x, x) at x_i
  double max_residual = 0.0;             // scaled by 1 + max|F|
};

struct GLOptions {
  int gl_intervals = 400;
  nystrom::Rule rule = nystrom::Rule::gregory;
  nystrom::Execution execution = nystrom::Execution::parallel;
};

KernelF build_kernel_from_coeffs(const OperatorSpec& base, const SpectrumTable& base_spec,
                                 const PerturbationSeq& c, const Grid& gl_grid);

/// Same kernel parameterised by target norming constants, c_n = 1/a_n - 1/a_n^0.
/// `target_a` has one entry per index; indices past its end keep a_n^0.
KernelF build_kernel_from_norming(const SpectrumTable& base_spec, const std::vector<double>& target_a,
                                  const Grid& gl_grid, const OperatorSpec& base);

/// c_n = 1/a_n - 1/a_n^0 for every entry of target_a.
PerturbationSeq coeffs_from_norming(const SpectrumTable& base_spec, const std::vector<double>& target_a);

GLSolution solve_gl(const KernelF& F, nystrom::Rule rule = nystrom::Rule::gregory,
                    nystrom::Execution exec = nystrom::Execution::parallel);

/// Stencil width for d/dx K(x,x) (order 6).
inline constexpr int diag_stencil_points = 7;
/// Local interpolation width when moving GL-grid data to the solver grid.
inline constexpr int resample_points = 6;

/// q = q0 + 2 d/dx K(x,x) on the base operator's grid. The correction term is
/// interpolated from the GL grid; q0 keeps its own samples.
Potential reconstruct_potential(const OperatorSpec& base, const GLSolution& sol);

/// arccot(cot(alpha0) + sum c_n).
double new_alpha(double base_alpha, const PerturbationSeq& c);

struct BetaUpdate {
  double beta = 0.0;
  double cot_beta = 0.0;
  /// sum |terms| / max(|sum terms|, eps): large values flag cancellation in
  /// the update, e.g. when several phi0(pi, mu_n)^2 terms nearly cancel.
  double condition = 1.0;
};

/// cot(beta) = cot(beta0) + sum c_n phi0(pi, mu_n)^2 / (1 + c_n a_n^0).
BetaUpdate new_beta(const OperatorSpec& base, const SpectrumTable& base_spec, const PerturbationSeq& c);
/// cot(beta) = cot(beta0) + sum (a_n^0 - a_n) phi0(pi, mu_n)^2 / (a_n^0)^2.
BetaUpdate new_beta_from_norming(const OperatorSpec& base, const SpectrumTable& base_spec,
                                 const std::vector<double>& target_a);

/// Everything the isospectral construction produced, stage by stage.
struct Construction {
  OperatorSpec op;
  SpectrumTable base_spectrum;
  KernelF kernel;
  GLSolution solution;
  BetaUpdate beta;
};

Construction isospectral_construct_detailed(const OperatorSpec& base, const PerturbationSeq& c,
                                            const GLOptions& opts = {});
OperatorSpec isospectral_construct(const OperatorSpec& base, const PerturbationSeq& c,
                                   const GLOptions& opts = {});

/// phi(x) = phi0(x) + int_0^x K(x,t) phi0(t) dt on the GL grid; the
/// derivative is the order-6 finite difference of the transformed values.
SolutionTrace transform_solution(const SolutionTrace& base_trace, const GLSolution& sol,
                                 nystrom::Rule rule = nystrom::Rule::gregory);

}  // namespace isospec
