#include "isospec/stencil.hpp"

#include <algorithm>
#include <cmath>

#include "isospec/error.hpp"

namespace isospec::stencil {

std::vector<double> fd_weights(double x0, std::span<const double> nodes, int deriv) {
  const int n = static_cast<int>(nodes.size()) - 1;
  if (n < deriv) throw Error(ErrorKind::grid, "stencil too small for derivative order");
  // c[k][j]: weight of node j for the k-th derivative.
  std::vector<std::vector<double>> c(static_cast<std::size_t>(deriv) + 1,
                                     std::vector<double>(nodes.size(), 0.0));
  c[0][0] = 1.0;
  double c1 = 1.0;
  double c4 = nodes[0] - x0;
  for (int i = 1; i <= n; ++i) {
    const int mn = std::min(i, deriv);
    double c2 = 1.0;
    const double c5 = c4;
    c4 = nodes[static_cast<std::size_t>(i)] - x0;
    for (int j = 0; j < i; ++j) {
      const double c3 = nodes[static_cast<std::size_t>(i)] - nodes[static_cast<std::size_t>(j)];
      c2 *= c3;
      if (j == i - 1) {
        for (int k = mn; k >= 1; --k) {
          c[k][i] = c1 * (k * c[k - 1][i - 1] - c5 * c[k][i - 1]) / c2;
        }
        c[0][i] = -c1 * c5 * c[0][i - 1] / c2;
      }
      for (int k = mn; k >= 1; --k) c[k][j] = (c4 * c[k][j] - k * c[k - 1][j]) / c3;
      c[0][j] = c4 * c[0][j] / c3;
    }
    c1 = c2;
  }
  return c[static_cast<std::size_t>(deriv)];
}

namespace {

int window_start(int centre, int points, int last) {
  return std::clamp(centre - points / 2, 0, last + 1 - points);
}

}  // namespace

std::vector<double> derivative(std::span<const double> f, double h, int points) {
  const int n = static_cast<int>(f.size());
  if (points < 2 || n < points) throw Error(ErrorKind::grid, "not enough samples for the stencil");
  std::vector<double> out(f.size());
  std::vector<double> offsets(static_cast<std::size_t>(points));
  for (int i = 0; i < n; ++i) {
    const int s = window_start(i, points, n - 1);
    for (int k = 0; k < points; ++k) offsets[static_cast<std::size_t>(k)] = s + k - i;
    const auto w = fd_weights(0.0, offsets, 1);
    double d = 0.0;
    for (int k = 0; k < points; ++k) d += w[static_cast<std::size_t>(k)] * f[static_cast<std::size_t>(s + k)];
    out[static_cast<std::size_t>(i)] = d / h;
  }
  return out;
}

std::vector<double> lagrange_resample(const Grid& from, std::span<const double> values,
                                      const Grid& to, int points) {
  if (values.size() != from.size()) throw Error(ErrorKind::grid, "sample count does not match grid");
  const int m = from.intervals();
  if (points < 2 || points > m + 1) throw Error(ErrorKind::grid, "bad interpolation width");
  std::vector<double> out(to.size());
  std::vector<double> offsets(static_cast<std::size_t>(points));
  for (int i = 0; i <= to.intervals(); ++i) {
    const double t = to.node(i) / from.step();  // position in source intervals
    const double nearest = std::round(t);
    if (std::abs(t - nearest) < 1e-12) {
      out[static_cast<std::size_t>(i)] = values[static_cast<std::size_t>(nearest)];
      continue;
    }
    const int left = static_cast<int>(std::floor(t));
    const int s = std::clamp(left - (points / 2 - 1), 0, m + 1 - points);
    for (int k = 0; k < points; ++k) offsets[static_cast<std::size_t>(k)] = s + k;
    const auto w = fd_weights(t, offsets, 0);
    double v = 0.0;
    for (int k = 0; k < points; ++k) v += w[static_cast<std::size_t>(k)] * values[static_cast<std::size_t>(s + k)];
    out[static_cast<std::size_t>(i)] = v;
  }
  return out;
}

}  // namespace isospec::stencil
