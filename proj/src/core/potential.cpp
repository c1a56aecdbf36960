#include <algorithm>
#include <cmath>
#include <string>

#include "isospec/error.hpp"
#include "isospec/types.hpp"

namespace isospec {

namespace {

std::vector<double> checked(const Grid& grid, std::vector<double> values) {
  if (values.size() != grid.size()) {
    throw Error(ErrorKind::schema, "potential must have grid_nodes + 1 = " +
                                       std::to_string(grid.size()) + " samples, got " +
                                       std::to_string(values.size()));
  }
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!std::isfinite(values[i])) {
      throw Error(ErrorKind::schema, "potential[" + std::to_string(i) + "] is not finite");
    }
  }
  return values;
}

/// q at the midpoint of interval i by six-point Lagrange interpolation,
/// window shifted inwards at the ends. O(h^6) everywhere; a natural spline
/// would drop to O(h^2) next to the endpoints.
double midpoint(const std::vector<double>& v, int i) {
  constexpr int points = 6;
  const int m = static_cast<int>(v.size()) - 1;
  const int start = std::clamp(i - points / 2 + 1, 0, m - points + 1);
  const double x = i + 0.5;
  double sum = 0.0;
  for (int j = start; j < start + points; ++j) {
    double w = 1.0;
    for (int k = start; k < start + points; ++k) {
      if (k != j) w *= (x - k) / (j - k);
    }
    sum += w * v[static_cast<std::size_t>(j)];
  }
  return sum;
}

}  // namespace

Potential::Potential(Grid grid, std::vector<double> values)
    : grid_(grid), values_(checked(grid, std::move(values))), spline_(grid_, values_) {
  const int m = grid_.intervals();
  half_.resize(2 * static_cast<std::size_t>(m) + 1);
  for (int k = 0; k <= 2 * m; ++k) {
    half_[static_cast<std::size_t>(k)] =
        (k % 2 == 0) ? values_[static_cast<std::size_t>(k / 2)]
                     : midpoint(values_, k / 2);
  }
}

Potential Potential::sample(Grid grid, const std::function<double(double)>& f) {
  std::vector<double> v(grid.size());
  for (int i = 0; i <= grid.intervals(); ++i) v[static_cast<std::size_t>(i)] = f(grid.node(i));
  return Potential(grid, std::move(v));
}

Potential Potential::zero(Grid grid) { return Potential(grid, std::vector<double>(grid.size(), 0.0)); }

double Potential::operator()(double x) const { return spline_(x); }

double Potential::min() const { return *std::min_element(values_.begin(), values_.end()); }
double Potential::max() const { return *std::max_element(values_.begin(), values_.end()); }

Potential Potential::reflected() const {
  std::vector<double> v(values_.rbegin(), values_.rend());
  return Potential(grid_, std::move(v));
}

Potential Potential::resampled(const Grid& to) const {
  if (to == grid_) return *this;
  return Potential(to, resample(grid_, values_, to));
}

}  // namespace isospec
