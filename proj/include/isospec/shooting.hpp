#pragma once

#include <cmath>
#include <cstddef>
#include <span>

#include "isospec/error.hpp"
#include "isospec/types.hpp"

namespace isospec::shooting {

enum class Direction { forward_from_0, backward_from_pi };

/// (y, y') at one point.
struct State {
  double y = 0.0;
  double yp = 0.0;
};

/// One classical RK4 step of  y' = yp,  yp' = (q - mu) y  with step h (signed).
/// q0, qm, q1 are the potential at the start, midpoint and end of the step.
inline State rk4_step(State s, double h, double mu, double q0, double qm, double q1) noexcept {
  const double half = 0.5 * h;
  const double k1y = s.yp;
  const double k1p = (q0 - mu) * s.y;
  const double k2y = s.yp + half * k1p;
  const double k2p = (qm - mu) * (s.y + half * k1y);
  const double k3y = s.yp + half * k2p;
  const double k3p = (qm - mu) * (s.y + half * k2y);
  const double k4y = s.yp + h * k3p;
  const double k4p = (q1 - mu) * (s.y + h * k3y);
  return {s.y + h / 6.0 * (k1y + 2.0 * k2y + 2.0 * k3y + k4y),
          s.yp + h / 6.0 * (k1p + 2.0 * k2p + 2.0 * k3p + k4p)};
}

/// Integrates from one end of the potential's grid to the other, taking steps
/// of `stride` grid intervals. `visit(node, state)` sees every visited node,
/// the starting node included. Returns the state at the far end.
template <class Visit>
State propagate(const Potential& q, double mu, Direction dir, int stride, State start, Visit&& visit) {
  const int m = q.grid().intervals();
  if (stride < 1 || m % stride != 0) {
    throw Error(ErrorKind::grid, "shooting stride must divide the interval count");
  }
  const auto half = q.half_samples();
  const double h = q.grid().step() * stride;
  State s = start;
  if (dir == Direction::forward_from_0) {
    visit(0, s);
    for (int j = 0; j < m; j += stride) {
      const auto k = static_cast<std::size_t>(2 * j);
      const auto st = static_cast<std::size_t>(stride);
      s = rk4_step(s, h, mu, half[k], half[k + st], half[k + 2 * st]);
      if (!std::isfinite(s.y) || !std::isfinite(s.yp)) {
        throw Error(ErrorKind::integration_overflow,
                    "non-finite solution at mu = " + std::to_string(mu) + "; refine the grid");
      }
      visit(j + stride, s);
    }
  } else {
    visit(m, s);
    for (int j = m; j > 0; j -= stride) {
      const auto k = static_cast<std::size_t>(2 * j);
      const auto st = static_cast<std::size_t>(stride);
      s = rk4_step(s, -h, mu, half[k], half[k - st], half[k - 2 * st]);
      if (!std::isfinite(s.y) || !std::isfinite(s.yp)) {
        throw Error(ErrorKind::integration_overflow,
                    "non-finite solution at mu = " + std::to_string(mu) + "; refine the grid");
      }
      visit(j - stride, s);
    }
  }
  return s;
}

inline State propagate(const Potential& q, double mu, Direction dir, int stride, State start) {
  return propagate(q, mu, dir, stride, start, [](int, const State&) {});
}

/// Far-end state with one Richardson step: (16 S_h - S_2h) / 15.
/// Requires an even interval count.
State extrapolated_endpoint(const Potential& q, double mu, Direction dir, State start);

/// Continuous Pruefer angle theta(pi; mu) of phi, theta = arg(y' + i y),
/// starting from theta(0) = pi - alpha. Strictly increasing in mu.
double pruefer_angle(const OperatorSpec& op, double mu);

}  // namespace isospec::shooting
