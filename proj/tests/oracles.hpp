#pragma once

// Independent reference values for the tests. Nothing here calls the
// library's solvers; the closed forms are written out directly.

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "isospec/grid.hpp"
#include "isospec/types.hpp"

namespace oracle {

/// Phi(mu) for q = 0 from the explicit solution
/// phi = cos(kx) - cot(alpha) sin(kx)/k (cosh/sinh for mu < 0).
inline double char_zero_potential(double mu, double cot_a, double cot_b) {
  const double x = isospec::pi;
  double phi, dphi;
  if (mu > 0) {
    const double k = std::sqrt(mu);
    phi = std::cos(k * x) - cot_a * std::sin(k * x) / k;
    dphi = -k * std::sin(k * x) - cot_a * std::cos(k * x);
  } else if (mu < 0) {
    const double k = std::sqrt(-mu);
    phi = std::cosh(k * x) - cot_a * std::sinh(k * x) / k;
    dphi = k * std::sinh(k * x) - cot_a * std::cosh(k * x);
  } else {
    phi = 1.0 - cot_a * x;
    dphi = -cot_a;
  }
  return phi * cot_b + dphi;
}

/// First n_max + 1 eigenvalues of L(0, alpha, beta): scan for sign changes,
/// then plain bisection to machine precision.
inline std::vector<double> zero_potential_eigenvalues(double alpha, double beta, int n_max) {
  const double ca = std::cos(alpha) / std::sin(alpha);
  const double cb = std::cos(beta) / std::sin(beta);
  std::vector<double> out;
  double lo = -(ca * ca + cb * cb) - 2.0;
  double f_lo = char_zero_potential(lo, ca, cb);
  const double step = 1e-3;
  while (static_cast<int>(out.size()) <= n_max) {
    const double hi = lo + step;
    const double f_hi = char_zero_potential(hi, ca, cb);
    if (f_hi == 0.0 || (f_lo < 0) != (f_hi < 0)) {
      double a = lo, b = hi, fa = f_lo;
      for (int it = 0; it < 200 && b - a > 1e-15 * (1 + std::abs(a)); ++it) {
        const double m = 0.5 * (a + b);
        const double fm = char_zero_potential(m, ca, cb);
        if ((fm < 0) == (fa < 0)) {
          a = m;
          fa = fm;
        } else {
          b = m;
        }
      }
      out.push_back(0.5 * (a + b));
    }
    lo = hi;
    f_lo = f_hi;
  }
  return out;
}

/// The closed-form family member for c_0 on the Neumann zero base:
/// K(x,t) = -c / (1 + c x), q = 2 c^2 / (1 + c x)^2.
inline double neumann_c0_potential(double c, double x) {
  const double d = 1.0 + c * x;
  return 2.0 * c * c / (d * d);
}

/// Random admissible finite-support sequence: 1..max_support draws of an
/// index in 0..max_index with c_n uniform in [-1, 1], redrawn until
/// 1 + c_n a_n^0 >= margin. a0 must cover max_index.
inline std::vector<double> random_sequence(std::mt19937_64& rng, const std::vector<double>& a0,
                                           double margin = 0.05, int max_index = 12, int max_support = 8) {
  std::uniform_real_distribution<double> value(-1.0, 1.0);
  std::vector<double> c(static_cast<std::size_t>(max_index) + 1, 0.0);
  const auto k = 1 + rng() % static_cast<std::uint64_t>(max_support);
  for (std::uint64_t j = 0; j < k; ++j) {
    const auto n = static_cast<std::size_t>(rng() % static_cast<std::uint64_t>(max_index + 1));
    double v;
    do {
      v = value(rng);
    } while (1.0 + v * a0[n] < margin);
    c[n] = v;
  }
  return c;
}

}  // namespace oracle
