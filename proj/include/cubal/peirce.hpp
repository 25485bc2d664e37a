#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "cubal/algebra.hpp"
#include "cubal/sphere_search.hpp"

namespace cubal {

inline constexpr double kTolSub = 1e-8;

/// One eigenvalue cluster of L_c with a form-orthonormal eigenspace basis.
struct EigenCluster {
  double value = 0.0;
  int multiplicity = 0;
  std::vector<Eigen::VectorXd> basis;
};

/// Full symmetric eigendecomposition of L_c, eigenvalues clustered within
/// tol_eig and sorted descending. Requires c idempotent to tol_idem.
std::vector<EigenCluster> peirce_spectrum(const MetrisedAlgebra& algebra,
                                          const Eigen::VectorXd& c,
                                          double tol_idem = 1e-8,
                                          double tol_eig = 1e-6);

struct SubalgebraCheck {
  bool closed = false;
  double max_residual = 0.0;  // largest component of b_i b_j outside the span
  double tol = kTolSub;
};

/// Closure of span(basis) under the product; basis must be orthonormal with
/// respect to the form.
SubalgebraCheck check_subalgebra(const MetrisedAlgebra& algebra,
                                 const std::vector<Eigen::VectorXd>& basis,
                                 double tol_sub = kTolSub);

/// Restriction of product and form to the span of an orthonormal basis that
/// check_subalgebra accepts; coordinates are the basis coefficients.
MetrisedAlgebra build_restricted_algebra(const MetrisedAlgebra& algebra,
                                         const std::vector<Eigen::VectorXd>& basis);

enum class DecompositionVerdict { kIndecomposable, kDecomposable, kInconclusive };

std::string to_string(DecompositionVerdict verdict);

struct PeirceReport {
  Eigen::VectorXd c;
  std::vector<std::pair<double, int>> eigenvalues;  // (value, multiplicity)
  std::vector<Eigen::VectorXd> v1_basis;
  int dim_v1 = 0;
  bool v1_is_subalgebra = false;
  double subalgebra_residual = 0.0;
  DecompositionVerdict verdict = DecompositionVerdict::kInconclusive;
  std::optional<std::pair<Eigen::VectorXd, Eigen::VectorXd>> decomposition;
  // residuals of the verification chain when a decomposition is present
  double c1_residual = 0.0;      // ‖c₁² − c₁‖
  double c2_residual = 0.0;      // ‖c₂² − c₂‖
  double cross_residual = 0.0;   // ‖c₁c₂‖
  double reverify_residual = 0.0;  // max_i ‖c·c_i − c_i‖
  std::string diagnostic;
};

/// Decide decomposability of an idempotent: dim V_c(1) = 1 means
/// indecomposable; if V_c(1) is a subalgebra of dimension ≥ 2, an extremal
/// idempotent of the restriction distinct from its unit yields a verified
/// decomposition c = c₁ + c₂. When V_c(1) fails the subalgebra check the
/// verdict is inconclusive rather than extrapolated.
PeirceReport decide_decomposable(const MetrisedAlgebra& algebra,
                                 const Eigen::VectorXd& c,
                                 const SearchConfig& cfg);

/// Least-squares unit detection: minimize ‖L_e − Id‖_F over e.
struct UnitSearch {
  std::optional<Eigen::VectorXd> unit;
  double residual = 0.0;
};

UnitSearch find_unit(const MetrisedAlgebra& algebra, double tol_eig = 1e-6);

struct UnitSplit {
  Eigen::VectorXd unit;
  Eigen::VectorXd c_prime;     // extremal idempotent distinct from the unit
  Eigen::VectorXd complement;  // unit − c_prime, itself idempotent
  double unit_residual = 0.0;
  double c_prime_residual = 0.0;
  double complement_residual = 0.0;
};

/// On a unital algebra of dimension ≥ 2, produce an extremal idempotent
/// c′ ≠ e and the complementary idempotent e − c′; together with e these are
/// three distinct nonzero idempotents. Returns nullopt (with a diagnostic)
/// when no unit exists or the search fails.
std::optional<UnitSplit> split_unit(const MetrisedAlgebra& algebra,
                                              const SearchConfig& cfg,
                                              std::string* diagnostic = nullptr);

}  // namespace cubal
