#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "cubal/bilinear_form.hpp"
#include "cubal/cubic_form.hpp"

namespace cubal {

/// Default absolute tolerance for structural residuals on unit-scaled
/// entries: well above linear-solve noise, far below structural signal.
inline constexpr double kTolStruct = 1e-9;

/// Residuals of the defining structural identities of a commutative
/// metrised algebra, measured over all basis triples plus a seeded sample
/// of random vectors.
struct StructureReport {
  double commutativity = 0.0;   // max |P^k_ij - P^k_ji|
  double associativity = 0.0;   // max |⟨e_i e_j, e_k⟩ - ⟨e_i, e_j e_k⟩|
  double self_adjointness = 0.0;  // max |G L_x - L_x^T G| over sampled x
  double tol = kTolStruct;

  bool pass() const {
    return commutativity <= tol && associativity <= tol &&
           self_adjointness <= tol;
  }
  double max_residual() const;
};

/// Commutative algebra with structure tensor P ((xy)_k = sum P^k_ij x_i y_j)
/// and an associative positive definite bilinear form. Immutable after
/// construction; all operations are const and safe to share across threads.
class MetrisedAlgebra {
 public:
  MetrisedAlgebra(std::vector<Eigen::MatrixXd> product, BilinearForm form);

  int dim() const { return form_.dim(); }
  const BilinearForm& form() const { return form_; }
  const std::vector<Eigen::MatrixXd>& product_tensor() const {
    return product_;
  }

  Eigen::VectorXd multiply(const Eigen::VectorXd& x,
                           const Eigen::VectorXd& y) const;
  Eigen::VectorXd square(const Eigen::VectorXd& x) const {
    return multiply(x, x);
  }

  /// Matrix of L_x : y -> xy; self-adjoint with respect to the form.
  Eigen::MatrixXd left_mult_matrix(const Eigen::VectorXd& x) const;

  double inner(const Eigen::VectorXd& x, const Eigen::VectorXd& y) const {
    return form_.inner(x, y);
  }
  double norm(const Eigen::VectorXd& x) const { return form_.norm(x); }

  StructureReport check_structure(double tol = kTolStruct,
                                  std::uint64_t seed = 7,
                                  int samples = 16) const;

  double max_abs_product_entry() const;
  bool is_zero(double tol = 1e-12) const {
    return max_abs_product_entry() <= tol;
  }

 private:
  std::vector<Eigen::MatrixXd> product_;  // product_[k](i,j) = P^k_ij
  BilinearForm form_;
};

/// The algebra of a cubic form: the unique commutative product with
/// ⟨xy,z⟩ = u(x,y,z) for all z.
MetrisedAlgebra algebra_from_cubic(const CubicForm& u, const BilinearForm& form);

/// u_A(x) = (1/6)⟨xx,x⟩; inverse of algebra_from_cubic up to solve noise.
CubicForm cubic_from_algebra(const MetrisedAlgebra& algebra);

/// Isometric change of coordinates y = L^T x making the form the standard
/// inner product. Idempotents, L_x spectra and f-values are preserved.
struct OrthonormalizedAlgebra {
  MetrisedAlgebra algebra;     // identity-gram algebra in y-coordinates
  Eigen::MatrixXd to_ortho;    // y = to_ortho * x
  Eigen::MatrixXd from_ortho;  // x = from_ortho * y
};

OrthonormalizedAlgebra orthonormalize(const MetrisedAlgebra& algebra);

}  // namespace cubal
