#include "cubal/algebra.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "cubal/rng.hpp"

namespace cubal {

double StructureReport::max_residual() const {
  return std::max({commutativity, associativity, self_adjointness});
}

MetrisedAlgebra::MetrisedAlgebra(std::vector<Eigen::MatrixXd> product,
                                 BilinearForm form)
    : product_(std::move(product)), form_(std::move(form)) {
  const int n = form_.dim();
  if (static_cast<int>(product_.size()) != n)
    throw std::invalid_argument("product tensor has wrong number of slices");
  for (const auto& slice : product_)
    if (slice.rows() != n || slice.cols() != n)
      throw std::invalid_argument("product tensor slice has wrong shape");
}

Eigen::VectorXd MetrisedAlgebra::multiply(const Eigen::VectorXd& x,
                                          const Eigen::VectorXd& y) const {
  const int n = dim();
  if (x.size() != n || y.size() != n)
    throw std::invalid_argument("dimension mismatch");
  Eigen::VectorXd out(n);
  for (int k = 0; k < n; ++k) out[k] = x.dot(product_[k] * y);
  return out;
}

Eigen::MatrixXd MetrisedAlgebra::left_mult_matrix(const Eigen::VectorXd& x) const {
  const int n = dim();
  if (x.size() != n) throw std::invalid_argument("dimension mismatch");
  Eigen::MatrixXd L(n, n);
  for (int k = 0; k < n; ++k) L.row(k) = x.transpose() * product_[k];
  return L;
}

StructureReport MetrisedAlgebra::check_structure(double tol, std::uint64_t seed,
                                                 int samples) const {
  const int n = dim();
  StructureReport report;
  report.tol = tol;

  for (int k = 0; k < n; ++k)
    report.commutativity =
        std::max(report.commutativity,
                 (product_[k] - product_[k].transpose()).cwiseAbs().maxCoeff());

  // ⟨e_i e_j, e_k⟩ must be fully symmetric; compare the two bracketings.
  const Eigen::MatrixXd& G = form_.gram();
  for (int i = 0; i < n; ++i) {
    const Eigen::VectorXd ei = Eigen::VectorXd::Unit(n, i);
    for (int j = 0; j < n; ++j) {
      const Eigen::VectorXd ej = Eigen::VectorXd::Unit(n, j);
      const Eigen::VectorXd pij = multiply(ei, ej);
      for (int k = 0; k < n; ++k) {
        const Eigen::VectorXd ek = Eigen::VectorXd::Unit(n, k);
        const double lhs = pij.dot(G * ek);
        const double rhs = ei.dot(G * multiply(ej, ek));
        report.associativity =
            std::max(report.associativity, std::abs(lhs - rhs));
      }
    }
  }

  SplitMix64 gen(seed);
  for (int s = 0; s < samples; ++s) {
    const Eigen::VectorXd x = random_unit_vector(gen, n);
    const Eigen::MatrixXd L = left_mult_matrix(x);
    report.self_adjointness =
        std::max(report.self_adjointness,
                 (G * L - L.transpose() * G).cwiseAbs().maxCoeff());
  }
  return report;
}

double MetrisedAlgebra::max_abs_product_entry() const {
  double m = 0.0;
  for (const auto& slice : product_)
    m = std::max(m, slice.cwiseAbs().maxCoeff());
  return m;
}

MetrisedAlgebra algebra_from_cubic(const CubicForm& u, const BilinearForm& form) {
  const int n = form.dim();
  if (u.dim() != n) throw std::invalid_argument("dimension mismatch");

  // e_i e_j is the unique solution of G p = (u(e_i,e_j,e_k))_k.
  std::vector<Eigen::MatrixXd> product(n, Eigen::MatrixXd::Zero(n, n));
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      Eigen::VectorXd rhs(n);
      for (int k = 0; k < n; ++k) rhs[k] = u.coeff(i, j, k);
      const Eigen::VectorXd p = form.solve(rhs);
      for (int k = 0; k < n; ++k) {
        product[k](i, j) = p[k];
        product[k](j, i) = p[k];
      }
    }
  return MetrisedAlgebra(std::move(product), form);
}

CubicForm cubic_from_algebra(const MetrisedAlgebra& algebra) {
  const int n = algebra.dim();
  CubicForm u(n);
  const Eigen::MatrixXd& G = algebra.form().gram();
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      const Eigen::VectorXd pij = algebra.multiply(Eigen::VectorXd::Unit(n, i),
                                                   Eigen::VectorXd::Unit(n, j));
      const Eigen::VectorXd g = G * pij;
      for (int k = j; k < n; ++k) u.set_coeff(i, j, k, g[k]);
    }
  return u;
}

OrthonormalizedAlgebra orthonormalize(const MetrisedAlgebra& algebra) {
  const int n = algebra.dim();
  const Eigen::MatrixXd to = algebra.form().to_ortho_matrix();
  const Eigen::MatrixXd from = algebra.form().from_ortho_matrix();

  // y-coordinate product: x ∘ y = L^T ((L^{-T}x)(L^{-T}y))
  std::vector<Eigen::MatrixXd> product(n, Eigen::MatrixXd::Zero(n, n));
  for (int i = 0; i < n; ++i) {
    const Eigen::VectorXd bi = from.col(i);
    for (int j = i; j < n; ++j) {
      const Eigen::VectorXd bj = from.col(j);
      const Eigen::VectorXd p = to * algebra.multiply(bi, bj);
      for (int k = 0; k < n; ++k) {
        product[k](i, j) = p[k];
        product[k](j, i) = p[k];
      }
    }
  }
  return OrthonormalizedAlgebra{
      MetrisedAlgebra(std::move(product), BilinearForm::identity(n)), to, from};
}

}  // namespace cubal
