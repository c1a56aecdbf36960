#include "isospec/grid.hpp"

#include <string>

#include "isospec/error.hpp"

namespace isospec {

Grid::Grid(int intervals) : intervals_(intervals), step_(0.0) {
  if (intervals < min_intervals) {
    throw Error(ErrorKind::schema, "grid_nodes must be >= " + std::to_string(min_intervals) +
                                       ", got " + std::to_string(intervals));
  }
  step_ = pi / intervals;
}

std::vector<double> Grid::nodes() const {
  std::vector<double> out(size());
  for (int i = 0; i <= intervals_; ++i) out[static_cast<std::size_t>(i)] = node(i);
  return out;
}

}  // namespace isospec
