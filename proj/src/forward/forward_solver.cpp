#include "isospec/forward_solver.hpp"

#include <exception>
#include <string>

namespace isospec {

using shooting::State;

namespace {

SolutionTrace trace(const OperatorSpec& op, double mu, Direction dir) {
  const auto& grid = op.grid();
  SolutionTrace t{grid, std::vector<double>(grid.size()), std::vector<double>(grid.size()), mu, dir};
  const State start = dir == Direction::forward_from_0 ? State{1.0, -op.angles.cot_alpha()}
                                                       : State{1.0, -op.angles.cot_beta()};
  shooting::propagate(op.potential, mu, dir, 1, start, [&](int i, const State& s) {
    t.y[static_cast<std::size_t>(i)] = s.y;
    t.yprime[static_cast<std::size_t>(i)] = s.yp;
  });
  return t;
}

double phi_big(const OperatorSpec& op, double mu) {
  const State end = phi_at_pi(op, mu);
  return end.y * op.angles.cot_beta() + end.yp;
}

/// Size of the two terms that cancel in Phi at a root; Phi is only known to
/// rounding relative to this.
double phi_scale(const OperatorSpec& op, double mu) {
  const State end = phi_at_pi(op, mu);
  return std::max(1.0, std::abs(end.y * op.angles.cot_beta()) + std::abs(end.yp));
}

double psi_big(const OperatorSpec& op, double mu) {
  const State end = psi_at_0(op, mu);
  return end.y * op.angles.cot_alpha() + end.yp;
}

double squared_norm(const SolutionTrace& t) {
  std::vector<double> sq(t.y.size());
  for (std::size_t i = 0; i < sq.size(); ++i) sq[i] = t.y[i] * t.y[i];
  return simpson(sq, t.grid.step());
}

void require_eigenvalue(const OperatorSpec& op, double mu_n) {
  const double phi = phi_big(op, mu_n);
  if (std::abs(phi) > 1e-6 * (1.0 + std::abs(mu_n)) * phi_scale(op, mu_n)) {
    throw Error(ErrorKind::precondition, "mu = " + std::to_string(mu_n) +
                                             " is not an eigenvalue (|Phi| = " +
                                             std::to_string(std::abs(phi)) + ")");
  }
}

double target_angle(const OperatorSpec& op, int n) { return pi - op.beta() + n * pi; }

}  // namespace

SolutionTrace integrate_phi(const OperatorSpec& op, double mu) {
  return trace(op, mu, Direction::forward_from_0);
}

SolutionTrace integrate_psi(const OperatorSpec& op, double mu) {
  return trace(op, mu, Direction::backward_from_pi);
}

State phi_at_pi(const OperatorSpec& op, double mu) {
  return shooting::extrapolated_endpoint(op.potential, mu, Direction::forward_from_0,
                                         {1.0, -op.angles.cot_alpha()});
}

State psi_at_0(const OperatorSpec& op, double mu) {
  return shooting::extrapolated_endpoint(op.potential, mu, Direction::backward_from_pi,
                                         {1.0, -op.angles.cot_beta()});
}

CharacteristicValue char_phi(const OperatorSpec& op, double mu) {
  return CharacteristicValue{mu, phi_big(op, mu), std::nullopt, std::nullopt};
}

CharacteristicValue char_psi(const OperatorSpec& op, double mu) {
  return CharacteristicValue{mu, phi_big(op, mu), psi_big(op, mu), std::nullopt};
}

double char_derivative(const OperatorSpec& op, double mu) {
  const double h = mu_step(mu);
  return (phi_big(op, mu + h) - phi_big(op, mu - h)) / (2.0 * h);
}

double char_psi_derivative(const OperatorSpec& op, double mu) {
  const double h = mu_step(mu);
  return (psi_big(op, mu + h) - psi_big(op, mu - h)) / (2.0 * h);
}

SpectrumTable eigenvalues(const OperatorSpec& op, int n_max, const EigenOptions& opts) {
  if (n_max < 0) throw Error(ErrorKind::precondition, "n_max must be nonnegative");
  if (op.grid().intervals() % 2 != 0) {
    throw Error(ErrorKind::grid, "solver grid needs an even interval count");
  }
  const double ca = op.angles.cot_alpha();
  const double cb = op.angles.cot_beta();
  double lo = op.potential.min() - ca * ca - cb * cb - 1.0;
  double hi = (n_max + 2.0) * (n_max + 2.0) + op.potential.max() + 1.0;

  constexpr int max_expansions = 60;
  int expansions = 0;
  while (shooting::pruefer_angle(op, lo) >= target_angle(op, 0)) {
    if (++expansions > max_expansions) {
      throw Error(ErrorKind::search_failure, "no lower bracket for the ground state", 0);
    }
    lo -= (hi - lo);
  }
  expansions = 0;
  while (shooting::pruefer_angle(op, hi) <= target_angle(op, n_max)) {
    if (++expansions > max_expansions) {
      throw Error(ErrorKind::search_failure,
                  "no upper bracket for index " + std::to_string(n_max), n_max);
    }
    hi += (hi - lo);
  }

  std::vector<SpectralDatum> data(static_cast<std::size_t>(n_max) + 1);
  std::vector<std::exception_ptr> failures(data.size());

#pragma omp parallel for schedule(dynamic)
  for (int n = 0; n <= n_max; ++n) {
    try {
      const double target = target_angle(op, n);
      double a = lo;
      double b = hi;
      while (b - a > opts.bracket_width) {
        const double mid = 0.5 * (a + b);
        if (mid <= a || mid >= b) break;
        if (shooting::pruefer_angle(op, mid) < target) a = mid; else b = mid;
      }
      double mu = 0.5 * (a + b);

      // Polish on the extrapolated characteristic function.
      const double tol = opts.root_tolerance * (1.0 + std::abs(mu)) * phi_scale(op, mu);
      double value = phi_big(op, mu);
      for (int step = 0; step < std::max(opts.newton_steps, 8); ++step) {
        if (step >= opts.newton_steps && std::abs(value) <= tol) break;
        const double slope = char_derivative(op, mu);
        const double next = mu - value / slope;
        if (!std::isfinite(next) || std::abs(next - mu) > 1e-2 * (1.0 + std::abs(mu))) {
          throw Error(ErrorKind::search_failure,
                      "Newton polish left the bracket for index " + std::to_string(n), n);
        }
        mu = next;
        value = phi_big(op, mu);
      }
      if (std::abs(value) > tol) {
        throw Error(ErrorKind::search_failure,
                    "|Phi| = " + std::to_string(std::abs(value)) +
                        " above root tolerance for index " + std::to_string(n), n);
      }

      const SolutionTrace phi = integrate_phi(op, mu);
      if (interior_zeros(phi) != n) {
        throw Error(ErrorKind::consistency,
                    "eigenfunction " + std::to_string(n) + " has " +
                        std::to_string(interior_zeros(phi)) + " interior zeros", n);
      }
      if (std::abs(char_derivative(op, mu)) < 1e-6) {
        throw Error(ErrorKind::consistency,
                    "|dPhi/dmu| below 1e-6 at index " + std::to_string(n), n);
      }
      SpectralDatum& d = data[static_cast<std::size_t>(n)];
      d.n = n;
      d.mu = mu;
      d.a = squared_norm(phi);
      d.phi_end = phi_at_pi(op, mu).y;
      d.kappa = d.phi_end;
      if (opts.with_b) d.b = squared_norm(integrate_psi(op, mu));
    } catch (...) {
      failures[static_cast<std::size_t>(n)] = std::current_exception();
    }
  }
  for (const auto& f : failures) {
    if (f) std::rethrow_exception(f);
  }
  return SpectrumTable(std::move(data));
}

double norming_constant_a(const OperatorSpec& op, double mu_n) {
  require_eigenvalue(op, mu_n);
  return squared_norm(integrate_phi(op, mu_n));
}

double norming_constant_b(const OperatorSpec& op, double mu_n) {
  require_eigenvalue(op, mu_n);
  return squared_norm(integrate_psi(op, mu_n));
}

KappaResult kappa(const OperatorSpec& op, double mu_n) {
  require_eigenvalue(op, mu_n);
  KappaResult r;
  r.kappa = phi_at_pi(op, mu_n).y;
  r.self_check = std::abs(r.kappa * psi_at_0(op, mu_n).y - 1.0);
  if (r.self_check > 1e-5) {
    throw Error(ErrorKind::consistency, "kappa self-check |phi(pi) psi(0) - 1| = " +
                                            std::to_string(r.self_check) +
                                            "; eigenvalue tolerance too loose");
  }
  return r;
}

int interior_zeros(const SolutionTrace& t) {
  int count = 0;
  int last_sign = 0;
  for (double v : t.y) {
    const int s = (v > 0.0) - (v < 0.0);
    if (s == 0) continue;
    if (last_sign != 0 && s != last_sign) ++count;
    last_sign = s;
  }
  return count;
}

double simpson(std::span<const double> f, double h) {
  if (f.size() < 3 || f.size() % 2 == 0) {
    throw Error(ErrorKind::grid, "Simpson rule needs an odd sample count >= 3");
  }
  double odd = 0.0;
  double even = 0.0;
  for (std::size_t i = 1; i + 1 < f.size(); ++i) (i % 2 ? odd : even) += f[i];
  return h / 3.0 * (f.front() + f.back() + 4.0 * odd + 2.0 * even);
}

}  // namespace isospec
