#pragma once

#include <span>
#include <vector>

#include "isospec/grid.hpp"

namespace isospec::stencil {

/// Finite-difference weights (Fornberg) for the derivative of order `deriv`
/// at `x0` from samples at `nodes`.
std::vector<double> fd_weights(double x0, std::span<const double> nodes, int deriv);

/// First derivative of uniform samples using `points`-point stencils:
/// centred inside, shifted at the ends so every node keeps order points-1.
std::vector<double> derivative(std::span<const double> f, double h, int points);

/// Local Lagrange interpolation with `points` nodes per evaluation,
/// shifted inwards near the ends. Shared nodes are copied exactly.
std::vector<double> lagrange_resample(const Grid& from, std::span<const double> values,
                                      const Grid& to, int points);

}  // namespace isospec::stencil
