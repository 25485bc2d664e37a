#pragma once

#include <Eigen/Dense>

#include "cubal/algebra.hpp"

namespace cubal {

inline constexpr double kFdStep = 1e-5;

/// Gradient of u(x) = (1/6)⟨xx,x⟩ with respect to the algebra's form:
/// Du(x) = (1/2) x².
Eigen::VectorXd grad_u(const MetrisedAlgebra& algebra, const Eigen::VectorXd& x);

/// Hessian of u: (D²u(x))y = xy, i.e. the matrix of L_x.
Eigen::MatrixXd hess_u(const MetrisedAlgebra& algebra, const Eigen::VectorXd& x);

/// Value, gradient and Hessian of f(x) = ⟨x²,x⟩/|x|³. The derivative
/// objects live in the form-orthonormal coordinates (y = L^T x), where the
/// closed-form expressions
///   Df(x)  = 3 (x²|x|² − ⟨x²,x⟩x) / |x|⁵
///   D²f(x) = 3 (2|x|⁴L_x − ⟨x²,x⟩|x|²·Id − 3|x|²(x⊗x² + x²⊗x)
///               + 5⟨x²,x⟩·x⊗x) / |x|⁷
/// hold verbatim. f is homogeneous of degree zero and odd.
struct RayleighEval {
  double value = 0.0;
  Eigen::VectorXd gradient;
  Eigen::MatrixXd hessian;
};

RayleighEval eval_f(const MetrisedAlgebra& algebra, const Eigen::VectorXd& x);

/// Max relative errors between the analytic derivatives and central finite
/// differences with step h, taken in orthonormal coordinates.
struct FdReport {
  double h = kFdStep;
  double grad_u_error = 0.0;
  double hess_u_error = 0.0;
  double f_grad_error = 0.0;
  double f_hess_error = 0.0;

  double max_error() const;
};

FdReport fd_check(const MetrisedAlgebra& algebra, const Eigen::VectorXd& x,
                  double h = kFdStep);

}  // namespace cubal
