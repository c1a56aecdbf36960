#pragma once

#include <memory>
#include <span>
#include <vector>

#include "isospec/grid.hpp"

namespace isospec {

/// Natural cubic spline through samples on a uniform Grid.
///
/// Immutable after construction; evaluation is const and safe to call from
/// several threads at once. Arguments outside [0, pi] are clamped.
class NaturalSpline {
 public:
  NaturalSpline(const Grid& grid, std::span<const double> values);

  double operator()(double x) const;

 private:
  struct Impl;
  std::shared_ptr<const Impl> impl_;
};

/// Samples `values` (given on `from`) at every node of `to`. Nodes shared by
/// both grids are copied, not interpolated.
std::vector<double> resample(const Grid& from, std::span<const double> values, const Grid& to);

}  // namespace isospec
