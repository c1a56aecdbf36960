#include "isospec/types.hpp"

#include <string>

#include "isospec/error.hpp"

namespace isospec {

RobinAngles::RobinAngles(double alpha, double beta) : alpha_(alpha), beta_(beta) {
  if (!std::isfinite(alpha) || !(alpha > 0.0 && alpha < pi)) {
    throw Error(ErrorKind::schema, "alpha must lie in (0, pi), got " + std::to_string(alpha));
  }
  if (!std::isfinite(beta) || !(beta > 0.0 && beta < pi)) {
    throw Error(ErrorKind::schema, "beta must lie in (0, pi), got " + std::to_string(beta));
  }
}

OperatorSpec OperatorSpec::reflected() const {
  return OperatorSpec{potential.reflected(), RobinAngles(pi - beta(), pi - alpha())};
}

SpectrumTable::SpectrumTable(std::vector<SpectralDatum> data) {
  data_.reserve(data.size());
  for (auto& d : data) push_back(std::move(d));
}

const SpectralDatum& SpectrumTable::at(int n) const {
  if (n < 0 || n > n_max()) {
    throw Error(ErrorKind::coverage,
                "spectrum table holds n <= " + std::to_string(n_max()) + ", index " +
                    std::to_string(n) + " requested",
                n);
  }
  return data_[static_cast<std::size_t>(n)];
}

std::vector<double> SpectrumTable::eigenvalues() const {
  std::vector<double> mu;
  mu.reserve(data_.size());
  for (const auto& d : data_) mu.push_back(d.mu);
  return mu;
}

void SpectrumTable::push_back(SpectralDatum d) {
  const int expected = static_cast<int>(data_.size());
  if (d.n != expected) {
    throw Error(ErrorKind::schema,
                "spectrum index " + std::to_string(d.n) + " out of order, expected " +
                    std::to_string(expected),
                d.n);
  }
  if (!std::isfinite(d.mu) || !std::isfinite(d.a) || !std::isfinite(d.phi_end) ||
      !std::isfinite(d.kappa)) {
    throw Error(ErrorKind::schema, "non-finite field in spectral datum", d.n);
  }
  if (!data_.empty() && !(d.mu > data_.back().mu)) {
    throw Error(ErrorKind::schema,
                "eigenvalues must be strictly increasing (mu at n=" + std::to_string(d.n) + ")",
                d.n);
  }
  if (!(d.a > 0.0)) throw Error(ErrorKind::schema, "norming constant a must be positive", d.n);
  if (d.b && !(*d.b > 0.0 && std::isfinite(*d.b))) {
    throw Error(ErrorKind::schema, "norming constant b must be positive", d.n);
  }
  if (d.kappa == 0.0) throw Error(ErrorKind::schema, "kappa must be nonzero", d.n);
  if (d.kappa != d.phi_end) throw Error(ErrorKind::schema, "kappa must equal phi_end", d.n);
  data_.push_back(std::move(d));
}

PerturbationSeq::PerturbationSeq(std::vector<double> coeffs) : coeffs_(std::move(coeffs)) {
  for (std::size_t n = 0; n < coeffs_.size(); ++n) {
    if (!std::isfinite(coeffs_[n])) {
      throw Error(ErrorKind::schema, "coefficient c_" + std::to_string(n) + " is not finite",
                  static_cast<int>(n));
    }
  }
}

std::vector<int> PerturbationSeq::support() const {
  std::vector<int> out;
  for (std::size_t n = 0; n < coeffs_.size(); ++n) {
    if (coeffs_[n] != 0.0) out.push_back(static_cast<int>(n));
  }
  return out;
}

int PerturbationSeq::last_index() const {
  for (auto n = static_cast<int>(coeffs_.size()) - 1; n >= 0; --n) {
    if (coeffs_[static_cast<std::size_t>(n)] != 0.0) return n;
  }
  return -1;
}

double PerturbationSeq::sum() const {
  double s = 0.0;
  for (double c : coeffs_) s += c;
  return s;
}

void PerturbationSeq::check_admissible(const SpectrumTable& base) const {
  for (int n : support()) {
    if (n > base.n_max()) {
      throw Error(ErrorKind::coverage,
                  "base spectrum has no datum for c_" + std::to_string(n), n);
    }
    const double margin = 1.0 + (*this)[n] * base[n].a;
    if (!(margin > 0.0)) {
      throw Error(ErrorKind::admissibility,
                  "1 + c_n a_n^0 = " + std::to_string(margin) + " <= 0 at n = " +
                      std::to_string(n),
                  n);
    }
  }
}

}  // namespace isospec
