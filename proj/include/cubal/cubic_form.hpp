#pragma once

#include <vector>

#include <Eigen/Dense>

namespace cubal {

/// Cubic form u on R^n, stored through its full symmetric trilinearization:
/// coeff(i,j,k) = u(e_i, e_j, e_k), kept canonically as the entries with
/// i <= j <= k. The form itself is recovered by u(x) = (1/6) u(x,x,x).
class CubicForm {
 public:
  explicit CubicForm(int dim);

  int dim() const { return dim_; }

  /// Trilinear coefficient u(e_i, e_j, e_k); indices in any order, 0-based.
  double coeff(int i, int j, int k) const;

  void set_coeff(int i, int j, int k, double value);

  /// u(x) = (1/6) * sum_{i,j,k} coeff(i,j,k) x_i x_j x_k.
  double evaluate(const Eigen::VectorXd& x) const;

  /// Full trilinear contraction sum_{i,j,k} coeff(i,j,k) x_i y_j z_k,
  /// symmetric in (x, y, z).
  double polarize(const Eigen::VectorXd& x, const Eigen::VectorXd& y,
                  const Eigen::VectorXd& z) const;

  /// Long-double evaluation path for finite-difference harnesses, where
  /// double rounding at step h^2 would dominate the error budget.
  long double evaluate_ld(const Eigen::VectorXd& x) const;

  double max_abs_coeff() const;

  /// Number of canonical i <= j <= k entries for dimension n.
  static int packed_size(int n) { return n * (n + 1) * (n + 2) / 6; }

  const std::vector<double>& packed() const { return coeffs_; }

 private:
  int packed_index(int i, int j, int k) const;

  int dim_;
  std::vector<double> coeffs_;
};

/// Scale every coefficient; the stationary sphere points of the induced
/// algebra are invariant under t > 0.
CubicForm scale(const CubicForm& u, double t);

}  // namespace cubal
