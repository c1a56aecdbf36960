#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <span>
#include <vector>

#include "isospec/shooting.hpp"
#include "isospec/types.hpp"

namespace isospec {

using shooting::Direction;

/// Samples of y and y' along the grid for phi(., mu) or psi(., mu).
struct SolutionTrace {
  Grid grid;
  std::vector<double> y;
  std::vector<double> yprime;
  double mu = 0.0;
  Direction direction = Direction::forward_from_0;
};

struct CharacteristicValue {
  double mu = 0.0;
  double phi_big = 0.0;                // Phi(mu) = phi(pi) cot(beta) + phi'(pi)
  std::optional<double> psi_big;       // Psi(mu) = psi(0) cot(alpha) + psi'(0)
  std::optional<double> phi_big_dot;   // dPhi/dmu
};

struct EigenOptions {
  bool with_b = false;          // also fill SpectralDatum::b
  double bracket_width = 1e-9;  // bisection stops below this width
  int newton_steps = 3;
  double root_tolerance = 1e-8; // |Phi(mu_n)| <= tol (1 + |mu_n|) max(1, |phi(pi) cot beta| + |phi'(pi)|)
};

/// phi(., mu): phi(0) = 1, phi'(0) = -cot(alpha). Plain RK4 on the operator grid.
SolutionTrace integrate_phi(const OperatorSpec& op, double mu);
/// psi(., mu): psi(pi) = 1, psi'(pi) = -cot(beta), integrated from pi down to 0.
SolutionTrace integrate_psi(const OperatorSpec& op, double mu);

/// (phi(pi, mu), phi'(pi, mu)) from Richardson-extrapolated shooting.
shooting::State phi_at_pi(const OperatorSpec& op, double mu);
/// (psi(0, mu), psi'(0, mu)) from Richardson-extrapolated shooting.
shooting::State psi_at_0(const OperatorSpec& op, double mu);

CharacteristicValue char_phi(const OperatorSpec& op, double mu);
CharacteristicValue char_psi(const OperatorSpec& op, double mu);

/// Central-difference step used for dPhi/dmu and dPsi/dmu.
inline double mu_step(double mu) { return std::max(1e-5, 1e-5 * std::abs(mu)); }

/// dPhi/dmu by central differences with step mu_step(mu).
double char_derivative(const OperatorSpec& op, double mu);
/// dPsi/dmu, same stencil.
double char_psi_derivative(const OperatorSpec& op, double mu);

/// mu_0 < ... < mu_{n_max} with norming data. Indices come from the Pruefer
/// oscillation count, so none is skipped or repeated.
SpectrumTable eigenvalues(const OperatorSpec& op, int n_max, const EigenOptions& opts = {});

/// Integral of phi(x, mu_n)^2 over [0, pi] by composite Simpson on the grid.
double norming_constant_a(const OperatorSpec& op, double mu_n);
/// Integral of psi(x, mu_n)^2.
double norming_constant_b(const OperatorSpec& op, double mu_n);

struct KappaResult {
  double kappa = 0.0;       // phi(pi, mu_n)
  double self_check = 0.0;  // |kappa psi(0, mu_n) - 1|
};

/// kappa_n with the phi/psi consistency check; throws consistency error when
/// the check exceeds 1e-5.
KappaResult kappa(const OperatorSpec& op, double mu_n);

/// Sign changes of y strictly inside (0, pi).
int interior_zeros(const SolutionTrace& trace);

/// Composite Simpson on uniform samples; the sample count must be odd.
double simpson(std::span<const double> f, double h);

}  // namespace isospec
