#pragma once

#include <cstddef>
#include <numbers>
#include <vector>

namespace isospec {

inline constexpr double pi = std::numbers::pi;

/// Uniform grid of M intervals on [0, pi]. Node 0 is 0 and node M is pi exactly.
class Grid {
 public:
  static constexpr int min_intervals = 16;

  explicit Grid(int intervals);

  int intervals() const noexcept { return intervals_; }
  std::size_t size() const noexcept { return static_cast<std::size_t>(intervals_) + 1; }
  double step() const noexcept { return step_; }
  double node(int i) const noexcept { return i == intervals_ ? pi : pi * i / intervals_; }
  std::vector<double> nodes() const;

  /// True when every node of `coarse` is also a node of this grid.
  bool refines(const Grid& coarse) const noexcept {
    return intervals_ % coarse.intervals_ == 0;
  }

  friend bool operator==(const Grid&, const Grid&) = default;

 private:
  int intervals_;
  double step_;
};

}  // namespace isospec
