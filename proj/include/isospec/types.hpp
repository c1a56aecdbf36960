#pragma once

#include <cmath>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "isospec/grid.hpp"
#include "isospec/spline.hpp"

namespace isospec {

/// Robin boundary angles, both strictly inside (0, pi).
///   y(0) cot(alpha) + y'(0) = 0,   y(pi) cot(beta) + y'(pi) = 0
class RobinAngles {
 public:
  RobinAngles(double alpha, double beta);

  double alpha() const noexcept { return alpha_; }
  double beta() const noexcept { return beta_; }
  double cot_alpha() const noexcept { return std::cos(alpha_) / std::sin(alpha_); }
  double cot_beta() const noexcept { return std::cos(beta_) / std::sin(beta_); }

  friend bool operator==(const RobinAngles&, const RobinAngles&) = default;

 private:
  double alpha_;
  double beta_;
};

/// Angle in (0, pi) with the given cotangent.
inline double arccot(double cot_value) { return std::atan2(1.0, cot_value); }

/// Potential sampled on a uniform grid; natural cubic spline between nodes.
class Potential {
 public:
  Potential(Grid grid, std::vector<double> values);

  /// Samples `f` at the grid nodes.
  static Potential sample(Grid grid, const std::function<double(double)>& f);
  static Potential zero(Grid grid);

  const Grid& grid() const noexcept { return grid_; }
  std::span<const double> values() const noexcept { return values_; }
  double operator()(double x) const;

  /// q at x = k h / 2 for k = 0..2M; what the RK4 stages consume. Odd k are
  /// six-point Lagrange midpoints.
  std::span<const double> half_samples() const noexcept { return half_; }

  double min() const;
  double max() const;

  /// q(pi - x) on the same grid.
  Potential reflected() const;
  /// Same function on another grid (nodes copied where shared, spline otherwise).
  Potential resampled(const Grid& to) const;

  friend bool operator==(const Potential& a, const Potential& b) {
    return a.grid_ == b.grid_ && a.values_ == b.values_;
  }

 private:
  Grid grid_;
  std::vector<double> values_;
  NaturalSpline spline_;
  std::vector<double> half_;
};

/// One Sturm-Liouville problem L(q, alpha, beta).
struct OperatorSpec {
  Potential potential;
  RobinAngles angles;

  const Grid& grid() const noexcept { return potential.grid(); }
  double alpha() const noexcept { return angles.alpha(); }
  double beta() const noexcept { return angles.beta(); }

  /// The problem seen from the other end, x -> pi - x:
  /// L(q(pi - .), pi - beta, pi - alpha). Same spectrum; phi and psi trade places.
  OperatorSpec reflected() const;

  friend bool operator==(const OperatorSpec&, const OperatorSpec&) = default;
};

struct SpectralDatum {
  int n = 0;
  double mu = 0.0;
  double a = 0.0;               // integral of phi(x, mu_n)^2
  std::optional<double> b;      // integral of psi(x, mu_n)^2
  double phi_end = 0.0;         // phi(pi, mu_n)
  double kappa = 0.0;           // phi = kappa psi; equals phi_end

  friend bool operator==(const SpectralDatum&, const SpectralDatum&) = default;
};

/// Prefix mu_0 < mu_1 < ... < mu_N of a spectrum with its norming data.
class SpectrumTable {
 public:
  SpectrumTable() = default;
  explicit SpectrumTable(std::vector<SpectralDatum> data);

  std::size_t size() const noexcept { return data_.size(); }
  bool empty() const noexcept { return data_.empty(); }
  /// Largest index present, or -1 when empty.
  int n_max() const noexcept { return static_cast<int>(data_.size()) - 1; }
  const SpectralDatum& operator[](int n) const { return data_[static_cast<std::size_t>(n)]; }
  const SpectralDatum& at(int n) const;
  const std::vector<SpectralDatum>& data() const noexcept { return data_; }
  std::vector<double> eigenvalues() const;

  /// Appends the next index; rejects anything that breaks strict ordering.
  void push_back(SpectralDatum datum);

  friend bool operator==(const SpectrumTable&, const SpectrumTable&) = default;

 private:
  std::vector<SpectralDatum> data_;
};

/// Finitely supported perturbation c_0..c_N (c_n = 0 beyond N).
class PerturbationSeq {
 public:
  PerturbationSeq() = default;
  explicit PerturbationSeq(std::vector<double> coeffs);

  const std::vector<double>& coeffs() const noexcept { return coeffs_; }
  double operator[](int n) const noexcept {
    return n >= 0 && n < static_cast<int>(coeffs_.size()) ? coeffs_[static_cast<std::size_t>(n)]
                                                           : 0.0;
  }
  /// Indices with c_n != 0, ascending.
  std::vector<int> support() const;
  /// Largest index with c_n != 0, or -1.
  int last_index() const;
  double sum() const;
  bool is_zero() const { return last_index() < 0; }

  /// Throws admissibility error naming the first n with 1 + c_n a_n <= 0, and
  /// coverage error when `base` does not reach the support.
  void check_admissible(const SpectrumTable& base) const;

  friend bool operator==(const PerturbationSeq&, const PerturbationSeq&) = default;

 private:
  std::vector<double> coeffs_;
};

}  // namespace isospec
