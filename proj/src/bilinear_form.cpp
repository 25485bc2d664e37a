#include "cubal/bilinear_form.hpp"

#include <cmath>
#include <stdexcept>

namespace cubal {

BilinearForm::BilinearForm(Eigen::MatrixXd gram) : gram_(std::move(gram)) {
  if (gram_.rows() < 1 || gram_.rows() != gram_.cols())
    throw std::invalid_argument("gram matrix must be square and nonempty");

  const double scale = std::max(1.0, gram_.cwiseAbs().maxCoeff());
  if ((gram_ - gram_.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale)
    throw std::invalid_argument("gram matrix not symmetric");
  gram_ = ((gram_ + gram_.transpose()) / 2.0).eval();

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(gram_);
  if (es.info() != Eigen::Success)
    throw std::invalid_argument("gram matrix eigendecomposition failed");
  if (es.eigenvalues().minCoeff() <= 0.0)
    throw std::invalid_argument("form not positive definite");

  llt_.compute(gram_);
  if (llt_.info() != Eigen::Success)
    throw std::invalid_argument("form not positive definite");
  const Eigen::MatrixXd lower = llt_.matrixL();
  to_ortho_ = lower.transpose();
  from_ortho_ = lower.transpose()
                    .triangularView<Eigen::Upper>()
                    .solve(Eigen::MatrixXd::Identity(dim(), dim()));
}

BilinearForm BilinearForm::identity(int dim) {
  return BilinearForm(Eigen::MatrixXd::Identity(dim, dim));
}

double BilinearForm::inner(const Eigen::VectorXd& x,
                           const Eigen::VectorXd& y) const {
  if (x.size() != dim() || y.size() != dim())
    throw std::invalid_argument("dimension mismatch");
  return x.dot(gram_ * y);
}

double BilinearForm::norm(const Eigen::VectorXd& x) const {
  return std::sqrt(std::max(0.0, inner(x, x)));
}

Eigen::VectorXd BilinearForm::to_ortho(const Eigen::VectorXd& x) const {
  return to_ortho_ * x;
}

Eigen::VectorXd BilinearForm::from_ortho(const Eigen::VectorXd& y) const {
  return from_ortho_ * y;
}

Eigen::VectorXd BilinearForm::solve(const Eigen::VectorXd& rhs) const {
  return llt_.solve(rhs);
}

bool BilinearForm::is_identity(double tol) const {
  return (gram_ - Eigen::MatrixXd::Identity(dim(), dim()))
             .cwiseAbs()
             .maxCoeff() <= tol;
}

}  // namespace cubal
