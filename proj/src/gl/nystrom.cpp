#include "isospec/nystrom.hpp"

#include <cmath>
#include <exception>
#include <string>
#include <utility>

#include "isospec/error.hpp"

namespace isospec::nystrom {

std::vector<double> weights(Rule rule, int n, double h) {
  if (n < 0) throw Error(ErrorKind::grid, "negative interval count for quadrature");
  std::vector<double> w(static_cast<std::size_t>(n) + 1, h);
  if (n == 0) {
    w[0] = 0.0;
    return w;
  }
  if (rule == Rule::trapezoid || n == 1) {
    w.front() = w.back() = 0.5 * h;
    return w;
  }
  switch (n) {
    case 2:
      w = {h / 3, 4 * h / 3, h / 3};
      return w;
    case 3:
      w = {3 * h / 8, 9 * h / 8, 9 * h / 8, 3 * h / 8};
      return w;
    case 4:
      w = {h / 3, 4 * h / 3, 2 * h / 3, 4 * h / 3, h / 3};
      return w;
    default:
      break;
  }
  const double ends[3] = {3.0 / 8.0, 7.0 / 6.0, 23.0 / 24.0};
  for (std::size_t k = 0; k < 3; ++k) {
    w[k] = ends[k] * h;
    w[w.size() - 1 - k] = ends[k] * h;
  }
  return w;
}

std::vector<double> partial_weights(int n, int nodes, double h) {
  std::vector<double> w(static_cast<std::size_t>(nodes) + 1);
  for (int l = 0; l <= nodes; ++l) {
    // coefficients of prod_{k != l} (s - k) / (l - k), lowest degree first
    std::vector<double> poly{1.0};
    for (int k = 0; k <= nodes; ++k) {
      if (k == l) continue;
      std::vector<double> next(poly.size() + 1, 0.0);
      for (std::size_t d = 0; d < poly.size(); ++d) {
        next[d + 1] += poly[d] / (l - k);
        next[d] -= poly[d] * k / (l - k);
      }
      poly = std::move(next);
    }
    double integral = 0.0;
    for (std::size_t d = poly.size(); d-- > 0;) integral = integral * n + poly[d] / static_cast<double>(d + 1);
    w[static_cast<std::size_t>(l)] = h * integral * n;
  }
  return w;
}

namespace {

/// Quadrature for row i: weights over nodes 0..width. Gregory rows with fewer
/// than five intervals integrate over [0, x_i] with a six-node rule that
/// reaches past x_i; the kernel equation holds for every t, so K(x_i, t_l)
/// with l > i are extra unknowns that are solved for and then dropped.
struct RowRule {
  std::vector<double> w;
  int width;
};

constexpr int start_nodes = 5;

RowRule row_rule(Rule rule, int i, int m, double h) {
  if (rule == Rule::gregory && i < start_nodes && m >= start_nodes) {
    return {partial_weights(i, start_nodes, h), start_nodes};
  }
  return {weights(rule, i, h), i};
}

double residual_of_row(const Eigen::MatrixXd& F, int i, const RowRule& rr, const Eigen::VectorXd& k) {
  double worst = 0.0;
  for (int j = 0; j <= rr.width; ++j) {
    double r = k(j) + F(i, j);
    for (int l = 0; l <= rr.width; ++l) r += rr.w[static_cast<std::size_t>(l)] * k(l) * F(l, j);
    worst = std::max(worst, std::abs(r));
  }
  return worst;
}

void check_square(const Eigen::MatrixXd& F) {
  if (F.rows() != F.cols() || F.rows() < 1) {
    throw Error(ErrorKind::grid, "kernel matrix must be square and nonempty");
  }
}

[[noreturn]] void singular(int i, double detail) {
  throw Error(ErrorKind::solvability,
              "Nystrom system singular at row " + std::to_string(i) + " (pivot/rcond " +
                  std::to_string(detail) + "); kernel is not admissible or grid too coarse");
}

}  // namespace

TriangleSolve solve_parallel(const Eigen::MatrixXd& F, double h, Rule rule) {
  check_square(F);
  const int m = static_cast<int>(F.rows()) - 1;
  TriangleSolve out{Eigen::MatrixXd::Zero(m + 1, m + 1), 0.0};
  out.K(0, 0) = -F(0, 0);
  const double scale = 1.0 + F.cwiseAbs().maxCoeff();

  std::vector<double> row_residual(static_cast<std::size_t>(m) + 1, 0.0);
  std::vector<std::exception_ptr> failures(static_cast<std::size_t>(m) + 1);

  // Larger rows first keeps the dynamic schedule balanced.
#pragma omp parallel for schedule(dynamic, 1)
  for (int r = 0; r < m; ++r) {
    const int i = m - r;
    try {
      const RowRule rr = row_rule(rule, i, m, h);
      const int n = rr.width + 1;
      Eigen::MatrixXd A(n, n);
      for (int j = 0; j < n; ++j) {
        for (int l = 0; l < n; ++l) A(j, l) = rr.w[static_cast<std::size_t>(l)] * F(l, j);
        A(j, j) += 1.0;
      }
      const Eigen::VectorXd rhs = -F.row(i).head(n).transpose();
      Eigen::PartialPivLU<Eigen::MatrixXd> lu(A);
      const double rcond = lu.rcond();
      if (!(rcond > 1e-13)) singular(i, rcond);
      const Eigen::VectorXd k = lu.solve(rhs);
      out.K.row(i).head(i + 1) = k.head(i + 1).transpose();
      row_residual[static_cast<std::size_t>(i)] = residual_of_row(F, i, rr, k);
    } catch (...) {
      failures[static_cast<std::size_t>(i)] = std::current_exception();
    }
  }
  for (const auto& f : failures) {
    if (f) std::rethrow_exception(f);
  }
  for (double r : row_residual) out.max_residual = std::max(out.max_residual, r / scale);
  return out;
}

TriangleSolve solve_serial_reference(const Eigen::MatrixXd& F, double h, Rule rule) {
  check_square(F);
  const int m = static_cast<int>(F.rows()) - 1;
  TriangleSolve out{Eigen::MatrixXd::Zero(m + 1, m + 1), 0.0};
  out.K(0, 0) = -F(0, 0);
  const double scale = 1.0 + F.cwiseAbs().maxCoeff();

  for (int i = 1; i <= m; ++i) {
    const RowRule rr = row_rule(rule, i, m, h);
    const auto n = static_cast<std::size_t>(rr.width) + 1;
    std::vector<std::vector<double>> a(n, std::vector<double>(n + 1));
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t l = 0; l < n; ++l) {
        a[j][l] = rr.w[l] * F(static_cast<int>(l), static_cast<int>(j)) + (j == l ? 1.0 : 0.0);
      }
      a[j][n] = -F(i, static_cast<int>(j));
    }
    for (std::size_t col = 0; col < n; ++col) {
      std::size_t pivot = col;
      for (std::size_t r = col + 1; r < n; ++r) {
        if (std::abs(a[r][col]) > std::abs(a[pivot][col])) pivot = r;
      }
      if (!(std::abs(a[pivot][col]) > 1e-13)) singular(i, std::abs(a[pivot][col]));
      std::swap(a[col], a[pivot]);
      for (std::size_t r = col + 1; r < n; ++r) {
        const double f = a[r][col] / a[col][col];
        if (f == 0.0) continue;
        for (std::size_t c = col; c <= n; ++c) a[r][c] -= f * a[col][c];
      }
    }
    Eigen::VectorXd k(static_cast<Eigen::Index>(n));
    for (std::size_t r = n; r-- > 0;) {
      double s = a[r][n];
      for (std::size_t c = r + 1; c < n; ++c) s -= a[r][c] * k(static_cast<Eigen::Index>(c));
      k(static_cast<Eigen::Index>(r)) = s / a[r][r];
    }
    out.K.row(i).head(i + 1) = k.head(i + 1).transpose();
    out.max_residual = std::max(out.max_residual, residual_of_row(F, i, rr, k) / scale);
  }
  return out;
}

}  // namespace isospec::nystrom
