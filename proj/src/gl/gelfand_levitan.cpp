#include "isospec/gelfand_levitan.hpp"

#include <cmath>
#include <string>

#include "isospec/error.hpp"

namespace isospec {

KernelF build_kernel_from_coeffs(const OperatorSpec& base, const SpectrumTable& base_spec,
                                 const PerturbationSeq& c, const Grid& gl_grid) {
  c.check_admissible(base_spec);
  const auto size = static_cast<Eigen::Index>(gl_grid.size());
  KernelF kernel{gl_grid, Eigen::MatrixXd::Zero(size, size), base_spec, c};
  for (int n : c.support()) {
    const SolutionTrace phi0 = integrate_phi(base, base_spec[n].mu);
    const std::vector<double> v = stencil::lagrange_resample(base.grid(), phi0.y, gl_grid, resample_points);
    // lower triangle only, mirrored below, so F is exactly symmetric
    for (Eigen::Index j = 0; j < size; ++j) {
      const double cj = c[n] * v[static_cast<std::size_t>(j)];
      for (Eigen::Index i = j; i < size; ++i) kernel.values(i, j) += cj * v[static_cast<std::size_t>(i)];
    }
  }
  kernel.values.triangularView<Eigen::StrictlyUpper>() = kernel.values.transpose();
  return kernel;
}

PerturbationSeq coeffs_from_norming(const SpectrumTable& base_spec, const std::vector<double>& target_a) {
  std::vector<double> coeffs(target_a.size(), 0.0);
  for (std::size_t n = 0; n < target_a.size(); ++n) {
    const int idx = static_cast<int>(n);
    if (!(target_a[n] > 0.0) || !std::isfinite(target_a[n])) {
      throw Error(ErrorKind::domain,
                  "target norming constant a_" + std::to_string(n) + " must be positive", idx);
    }
    const double a0 = base_spec.at(idx).a;
    coeffs[n] = target_a[n] == a0 ? 0.0 : 1.0 / target_a[n] - 1.0 / a0;
  }
  return PerturbationSeq(std::move(coeffs));
}

KernelF build_kernel_from_norming(const SpectrumTable& base_spec, const std::vector<double>& target_a,
                                  const Grid& gl_grid, const OperatorSpec& base) {
  return build_kernel_from_coeffs(base, base_spec, coeffs_from_norming(base_spec, target_a), gl_grid);
}

GLSolution solve_gl(const KernelF& F, nystrom::Rule rule, nystrom::Execution exec) {
  auto tri = nystrom::solve(F.values, F.gl_grid.step(), rule, exec);
  if (tri.max_residual > 1e-8) {
    throw Error(ErrorKind::consistency,
                "Gelfand-Levitan residual " + std::to_string(tri.max_residual) + " above 1e-8");
  }
  GLSolution sol{F.gl_grid, std::move(tri.K), {}, {}, tri.max_residual};
  sol.diag.resize(F.gl_grid.size());
  for (std::size_t i = 0; i < sol.diag.size(); ++i) {
    sol.diag[i] = sol.K(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i));
  }
  sol.diag_derivative = stencil::derivative(sol.diag, F.gl_grid.step(), diag_stencil_points);
  return sol;
}

Potential reconstruct_potential(const OperatorSpec& base, const GLSolution& sol) {
  std::vector<double> correction(sol.diag_derivative.size());
  for (std::size_t i = 0; i < correction.size(); ++i) correction[i] = 2.0 * sol.diag_derivative[i];
  const std::vector<double> on_base =
      stencil::lagrange_resample(sol.gl_grid, correction, base.grid(), resample_points);
  std::vector<double> q(base.potential.values().begin(), base.potential.values().end());
  for (std::size_t i = 0; i < q.size(); ++i) q[i] += on_base[i];
  return Potential(base.grid(), std::move(q));
}

double new_alpha(double base_alpha, const PerturbationSeq& c) {
  const double cot0 = std::cos(base_alpha) / std::sin(base_alpha);
  return arccot(cot0 + c.sum());
}

namespace {

BetaUpdate beta_from_terms(double cot0, const std::vector<double>& terms) {
  double sum = 0.0;
  double magnitude = std::abs(cot0);
  for (double t : terms) {
    sum += t;
    magnitude += std::abs(t);
  }
  BetaUpdate u;
  u.cot_beta = cot0 + sum;
  u.beta = arccot(u.cot_beta);
  u.condition = magnitude == 0.0 ? 1.0 : magnitude / std::max(std::abs(u.cot_beta), 1e-300);
  return u;
}

}  // namespace

BetaUpdate new_beta(const OperatorSpec& base, const SpectrumTable& base_spec, const PerturbationSeq& c) {
  c.check_admissible(base_spec);
  std::vector<double> terms;
  for (int n : c.support()) {
    const auto& d = base_spec[n];
    terms.push_back(c[n] * d.phi_end * d.phi_end / (1.0 + c[n] * d.a));
  }
  return beta_from_terms(base.angles.cot_beta(), terms);
}

BetaUpdate new_beta_from_norming(const OperatorSpec& base, const SpectrumTable& base_spec,
                                 const std::vector<double>& target_a) {
  std::vector<double> terms;
  for (std::size_t n = 0; n < target_a.size(); ++n) {
    const int idx = static_cast<int>(n);
    if (!(target_a[n] > 0.0)) {
      throw Error(ErrorKind::domain,
                  "target norming constant a_" + std::to_string(n) + " must be positive", idx);
    }
    const auto& d = base_spec.at(idx);
    terms.push_back((d.a - target_a[n]) * d.phi_end * d.phi_end / (d.a * d.a));
  }
  return beta_from_terms(base.angles.cot_beta(), terms);
}

Construction isospectral_construct_detailed(const OperatorSpec& base, const PerturbationSeq& c,
                                            const GLOptions& opts) {
  SpectrumTable base_spec;
  try {
    base_spec = eigenvalues(base, std::max(c.last_index(), 0));
  } catch (const Error& e) {
    rethrow_with_stage(e, "base-spectrum");
  }
  try {
    const Grid gl_grid(opts.gl_intervals);
    KernelF kernel = build_kernel_from_coeffs(base, base_spec, c, gl_grid);
    GLSolution sol = solve_gl(kernel, opts.rule, opts.execution);
    Potential q = reconstruct_potential(base, sol);
    const double alpha = new_alpha(base.alpha(), c);
    const BetaUpdate beta = new_beta(base, base_spec, c);
    return Construction{OperatorSpec{std::move(q), RobinAngles(alpha, beta.beta)},
                        std::move(base_spec), std::move(kernel), std::move(sol), beta};
  } catch (const Error& e) {
    rethrow_with_stage(e, "gelfand-levitan");
  }
}

OperatorSpec isospectral_construct(const OperatorSpec& base, const PerturbationSeq& c,
                                   const GLOptions& opts) {
  return isospectral_construct_detailed(base, c, opts).op;
}

SolutionTrace transform_solution(const SolutionTrace& base_trace, const GLSolution& sol,
                                 nystrom::Rule rule) {
  if (base_trace.direction != Direction::forward_from_0) {
    throw Error(ErrorKind::grid, "transform_solution expects a trace integrated from x = 0");
  }
  if (base_trace.y.size() != base_trace.grid.size()) {
    throw Error(ErrorKind::grid, "trace length does not match its grid");
  }
  const Grid& g = sol.gl_grid;
  const std::vector<double> phi0 = stencil::lagrange_resample(base_trace.grid, base_trace.y, g, resample_points);
  if (phi0.size() != static_cast<std::size_t>(sol.K.rows())) {
    throw Error(ErrorKind::grid, "resampled trace does not match the kernel grid");
  }
  SolutionTrace out{g, std::vector<double>(g.size()), {}, base_trace.mu, Direction::forward_from_0};
  for (int i = 0; i <= g.intervals(); ++i) {
    const auto w = nystrom::weights(rule, i, g.step());
    double integral = 0.0;
    for (int l = 0; l <= i; ++l) {
      integral += w[static_cast<std::size_t>(l)] * sol.K(i, l) * phi0[static_cast<std::size_t>(l)];
    }
    out.y[static_cast<std::size_t>(i)] = phi0[static_cast<std::size_t>(i)] + integral;
  }
  out.yprime = stencil::derivative(out.y, g.step(), diag_stencil_points);
  return out;
}

}  // namespace isospec
