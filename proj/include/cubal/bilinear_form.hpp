#pragma once

#include <Eigen/Dense>

namespace cubal {

/// Symmetric positive definite bilinear form ⟨x,y⟩ = x^T G y.
/// Definiteness is checked at construction; indefinite and merely
/// non-singular forms are rejected.
class BilinearForm {
 public:
  explicit BilinearForm(Eigen::MatrixXd gram);

  static BilinearForm identity(int dim);

  int dim() const { return static_cast<int>(gram_.rows()); }
  const Eigen::MatrixXd& gram() const { return gram_; }

  double inner(const Eigen::VectorXd& x, const Eigen::VectorXd& y) const;
  double squared_norm(const Eigen::VectorXd& x) const { return inner(x, x); }
  double norm(const Eigen::VectorXd& x) const;

  /// Coordinates in which the form is the standard inner product:
  /// y = L^T x for the Cholesky factor G = L L^T.
  Eigen::VectorXd to_ortho(const Eigen::VectorXd& x) const;
  Eigen::VectorXd from_ortho(const Eigen::VectorXd& y) const;
  const Eigen::MatrixXd& to_ortho_matrix() const { return to_ortho_; }
  const Eigen::MatrixXd& from_ortho_matrix() const { return from_ortho_; }

  /// Solve G p = rhs.
  Eigen::VectorXd solve(const Eigen::VectorXd& rhs) const;

  bool is_identity(double tol = 0.0) const;

 private:
  Eigen::MatrixXd gram_;
  Eigen::MatrixXd to_ortho_;    // L^T
  Eigen::MatrixXd from_ortho_;  // L^{-T}
  Eigen::LLT<Eigen::MatrixXd> llt_;
};

}  // namespace cubal
