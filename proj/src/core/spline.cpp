#include "isospec/spline.hpp"

#include <gsl/gsl_errno.h>
#include <gsl/gsl_spline.h>

#include <algorithm>

#include "isospec/error.hpp"

namespace isospec {

struct NaturalSpline::Impl {
  std::vector<double> x;
  std::vector<double> y;
  gsl_spline* spline = nullptr;

  ~Impl() { gsl_spline_free(spline); }
};

NaturalSpline::NaturalSpline(const Grid& grid, std::span<const double> values) {
  static const bool handler_off = [] {
    gsl_set_error_handler_off();
    return true;
  }();
  (void)handler_off;
  if (values.size() != grid.size()) {
    throw Error(ErrorKind::grid, "spline sample count does not match grid");
  }
  auto impl = std::make_shared<Impl>();
  impl->x = grid.nodes();
  impl->y.assign(values.begin(), values.end());
  impl->spline = gsl_spline_alloc(gsl_interp_cspline, impl->x.size());
  if (impl->spline == nullptr) throw Error(ErrorKind::domain, "spline allocation failed");
  if (gsl_spline_init(impl->spline, impl->x.data(), impl->y.data(), impl->x.size()) != GSL_SUCCESS) {
    throw Error(ErrorKind::domain, "spline initialisation failed");
  }
  impl_ = std::move(impl);
}

double NaturalSpline::operator()(double x) const {
  const auto& xs = impl_->x;
  // gsl_spline_eval refuses to extrapolate; clamp tiny overshoots from rounding.
  const double lo = xs.front();
  const double hi = xs.back();
  const double xc = std::clamp(x, lo, hi);
  return gsl_spline_eval(impl_->spline, xc, nullptr);
}

std::vector<double> resample(const Grid& from, std::span<const double> values, const Grid& to) {
  if (values.size() != from.size()) {
    throw Error(ErrorKind::grid, "resample: sample count does not match source grid");
  }
  std::vector<double> out(to.size());
  if (from.refines(to)) {
    const int stride = from.intervals() / to.intervals();
    for (int i = 0; i <= to.intervals(); ++i) {
      out[static_cast<std::size_t>(i)] = values[static_cast<std::size_t>(i * stride)];
    }
    return out;
  }
  const NaturalSpline spline(from, values);
  for (int i = 0; i <= to.intervals(); ++i) out[static_cast<std::size_t>(i)] = spline(to.node(i));
  return out;
}

}  // namespace isospec
