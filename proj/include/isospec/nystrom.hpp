#pragma once

#include <vector>

#include <Eigen/Dense>

namespace isospec::nystrom {

/// Quadrature behind the Nystrom discretisation of  int_0^x K(x,t) F(t,y) dt.
enum class Rule {
  trapezoid,  // endpoint half-weights, O(h^2)
  gregory,    // trapezoid with third-order Gregory end corrections, O(h^4)
};

/// Weights for int_0^{n h} on the n + 1 nodes 0, h, ..., n h.
std::vector<double> weights(Rule rule, int n, double h);

/// Weights for int_0^{n h} on the nodes 0, h, ..., nodes h (nodes >= n),
/// from the interpolating polynomial through all of them.
std::vector<double> partial_weights(int n, int nodes, double h);

enum class Execution { serial, parallel };

/// Solves  K(x_i, y_j) + F(x_i, y_j) + sum_l w_l K(x_i, t_l) F(t_l, y_j) = 0,
/// j <= i, for every row i of the lower triangle. Row 0 is K(0,0) = -F(0,0).
struct TriangleSolve {
  Eigen::MatrixXd K;          // lower triangle filled, upper triangle zero
  double max_residual = 0.0;  // max_i,j |residual| / (1 + max|F|)
};

/// Per-row LU solves (Eigen), rows distributed over OpenMP threads.
TriangleSolve solve_parallel(const Eigen::MatrixXd& F, double h, Rule rule);

/// Straight Gaussian elimination with partial pivoting, one row after the
/// other. Kept as the reference the parallel kernel is tested against.
TriangleSolve solve_serial_reference(const Eigen::MatrixXd& F, double h, Rule rule);

inline TriangleSolve solve(const Eigen::MatrixXd& F, double h, Rule rule, Execution exec) {
  return exec == Execution::parallel ? solve_parallel(F, h, rule)
                                     : solve_serial_reference(F, h, rule);
}

}  // namespace isospec::nystrom
