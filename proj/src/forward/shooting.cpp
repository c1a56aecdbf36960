#include "isospec/shooting.hpp"

#include <algorithm>
#include <string>

namespace isospec::shooting {

State extrapolated_endpoint(const Potential& q, double mu, Direction dir, State start) {
  if (q.grid().intervals() % 2 != 0) {
    throw Error(ErrorKind::grid, "extrapolated shooting needs an even interval count");
  }
  const State fine = propagate(q, mu, dir, 1, start);
  const State coarse = propagate(q, mu, dir, 2, start);
  return {(16.0 * fine.y - coarse.y) / 15.0, (16.0 * fine.yp - coarse.yp) / 15.0};
}

double pruefer_angle(const OperatorSpec& op, double mu) {
  const auto& q = op.potential;
  const int m = q.grid().intervals();
  const double h = q.grid().step();
  // An unwrapped increment is only trustworthy while one step turns the
  // solution vector by well under half a turn.
  const double reach = std::sqrt(std::max(0.0, std::abs(mu - q.min())) + std::abs(q.max())) * h;
  if (reach > 0.5) {
    throw Error(ErrorKind::search_failure,
                "grid too coarse to count oscillations at mu = " + std::to_string(mu));
  }
  const auto half = q.half_samples();
  State s{1.0, -op.angles.cot_alpha()};
  double theta = std::atan2(s.y, s.yp);
  for (int j = 0; j < m; ++j) {
    const auto k = static_cast<std::size_t>(2 * j);
    const State next = rk4_step(s, h, mu, half[k], half[k + 1], half[k + 2]);
    // arg(z_next * conj(z)), z = y' + i y
    theta += std::atan2(next.y * s.yp - next.yp * s.y, next.yp * s.yp + next.y * s.y);
    s = next;
    const double size = std::abs(s.y) + std::abs(s.yp);
    if (!std::isfinite(size)) {
      throw Error(ErrorKind::integration_overflow,
                  "non-finite solution at mu = " + std::to_string(mu) + "; refine the grid");
    }
    if (size > 1e100) {
      s.y *= 1e-100;
      s.yp *= 1e-100;
    } else if (size < 1e-100) {
      s.y *= 1e100;
      s.yp *= 1e100;
    }
  }
  return theta;
}

}  // namespace isospec::shooting
