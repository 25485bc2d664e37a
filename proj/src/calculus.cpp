#include "cubal/calculus.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace cubal {

namespace {

/// Closed-form f data for an identity-gram algebra at y ≠ 0.
RayleighEval rayleigh_at(const MetrisedAlgebra& ortho, const Eigen::VectorXd& y) {
  const int n = ortho.dim();
  const double r2 = y.squaredNorm();
  const double r = std::sqrt(r2);
  if (r < 1e-150) throw std::invalid_argument("f is undefined at the origin");

  const Eigen::VectorXd sq = ortho.square(y);
  const double lam = sq.dot(y);
  const double r3 = r2 * r;
  const double r5 = r3 * r2;
  const double r7 = r5 * r2;

  RayleighEval out;
  out.value = lam / r3;
  out.gradient = 3.0 * (sq * r2 - lam * y) / r5;

  Eigen::MatrixXd L = ortho.left_mult_matrix(y);
  L = ((L + L.transpose()) / 2.0).eval();
  out.hessian = 3.0 *
                (2.0 * r2 * r2 * L -
                 lam * r2 * Eigen::MatrixXd::Identity(n, n) -
                 3.0 * r2 * (y * sq.transpose() + sq * y.transpose()) +
                 5.0 * lam * y * y.transpose()) /
                r7;
  return out;
}

long double f_value_ld(const CubicForm& u, const Eigen::VectorXd& y) {
  long double r2 = 0.0L;
  for (int i = 0; i < y.size(); ++i)
    r2 += static_cast<long double>(y[i]) * y[i];
  const long double r = sqrtl(r2);
  return 6.0L * u.evaluate_ld(y) / (r * r * r);
}

double rel_max(const Eigen::MatrixXd& diff, const Eigen::MatrixXd& reference) {
  return diff.cwiseAbs().maxCoeff() /
         std::max(1.0, reference.cwiseAbs().maxCoeff());
}

}  // namespace

Eigen::VectorXd grad_u(const MetrisedAlgebra& algebra, const Eigen::VectorXd& x) {
  return 0.5 * algebra.square(x);
}

Eigen::MatrixXd hess_u(const MetrisedAlgebra& algebra, const Eigen::VectorXd& x) {
  return algebra.left_mult_matrix(x);
}

RayleighEval eval_f(const MetrisedAlgebra& algebra, const Eigen::VectorXd& x) {
  if (x.size() != algebra.dim()) throw std::invalid_argument("dimension mismatch");
  const OrthonormalizedAlgebra ortho = orthonormalize(algebra);
  return rayleigh_at(ortho.algebra, ortho.to_ortho * x);
}

double FdReport::max_error() const {
  return std::max({grad_u_error, hess_u_error, f_grad_error, f_hess_error});
}

FdReport fd_check(const MetrisedAlgebra& algebra, const Eigen::VectorXd& x,
                  double h) {
  if (x.size() != algebra.dim()) throw std::invalid_argument("dimension mismatch");
  if (!(h > 0.0 && h < 1.0)) throw std::invalid_argument("step must be in (0,1)");

  const OrthonormalizedAlgebra ortho = orthonormalize(algebra);
  const MetrisedAlgebra& oa = ortho.algebra;
  const CubicForm u = cubic_from_algebra(oa);
  const Eigen::VectorXd y = ortho.to_ortho * x;
  const int n = oa.dim();
  const long double hl = h;

  FdReport report;
  report.h = h;

  // ---- derivatives of u ----
  const Eigen::VectorXd grad = 0.5 * oa.square(y);
  const Eigen::MatrixXd hess = oa.left_mult_matrix(y);

  Eigen::VectorXd grad_fd(n);
  Eigen::MatrixXd hess_fd(n, n);
  auto step = [&](int i, double s) {
    Eigen::VectorXd p = y;
    p[i] += s;
    return p;
  };
  for (int i = 0; i < n; ++i)
    grad_fd[i] = static_cast<double>(
        (u.evaluate_ld(step(i, h)) - u.evaluate_ld(step(i, -h))) / (2.0L * hl));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      Eigen::VectorXd pp = step(i, h), pm = step(i, h), mp = step(i, -h),
                      mm = step(i, -h);
      pp[j] += h;
      pm[j] -= h;
      mp[j] += h;
      mm[j] -= h;
      hess_fd(i, j) = static_cast<double>(
          (u.evaluate_ld(pp) - u.evaluate_ld(pm) - u.evaluate_ld(mp) +
           u.evaluate_ld(mm)) /
          (4.0L * hl * hl));
    }
  report.grad_u_error = rel_max(grad_fd - grad, grad);
  report.hess_u_error = rel_max(hess_fd - hess, hess);

  // ---- derivatives of f ----
  if (y.norm() < 1e-150) throw std::invalid_argument("f is undefined at the origin");
  const RayleighEval f = rayleigh_at(oa, y);
  Eigen::VectorXd f_grad_fd(n);
  Eigen::MatrixXd f_hess_fd(n, n);
  for (int i = 0; i < n; ++i)
    f_grad_fd[i] = static_cast<double>(
        (f_value_ld(u, step(i, h)) - f_value_ld(u, step(i, -h))) / (2.0L * hl));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      Eigen::VectorXd pp = step(i, h), pm = step(i, h), mp = step(i, -h),
                      mm = step(i, -h);
      pp[j] += h;
      pm[j] -= h;
      mp[j] += h;
      mm[j] -= h;
      f_hess_fd(i, j) = static_cast<double>(
          (f_value_ld(u, pp) - f_value_ld(u, pm) - f_value_ld(u, mp) +
           f_value_ld(u, mm)) /
          (4.0L * hl * hl));
    }
  report.f_grad_error = rel_max(f_grad_fd - f.gradient, f.gradient);
  report.f_hess_error = rel_max(f_hess_fd - f.hessian, f.hessian);
  return report;
}

}  // namespace cubal
