#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "cubal/algebra.hpp"

namespace cubal {

/// Parameters of the one-idempotent family
/// u(x) = (1/3) x₁ (x₁² + 3a₂x₂² + … + 3aₙxₙ²) over the standard inner
/// product: the coefficients must be pairwise distinct and lie in (0, 1/2).
struct CounterexampleParams {
  int n = 2;
  std::vector<double> a;  // a₂..aₙ

  /// Canonical coefficients a_k = (2k−1)/(4n), k = 2..n.
  static CounterexampleParams with_defaults(int n);

  void validate() const;  // throws std::invalid_argument
};

CubicForm counterexample_cubic(const CounterexampleParams& params);
MetrisedAlgebra make_counterexample(const CounterexampleParams& params);

/// Exact idempotent set of the counterexample by its case analysis: the
/// quadratic system c² = c forces c_k = 0 for k ≥ 2 (two nonzero
/// coordinates contradict distinctness of the a_k, one forces c_k² < 0),
/// leaving exactly c = (1/2, 0, …, 0).
std::vector<Eigen::VectorXd> counterexample_oracle(const CounterexampleParams& params);

CubicForm hadamard_cubic(int n);

/// Componentwise-product algebra of u = (1/6)Σx_i³ over the standard inner
/// product; its nonzero idempotents are exactly the 0/1 vectors.
MetrisedAlgebra make_hadamard(int n);

/// All 2^n − 1 nonzero 0/1 idempotents, deterministic order.
std::vector<Eigen::VectorXd> hadamard_idempotent_oracle(int n);

CubicForm random_cubic(int n, std::uint64_t seed, double scale);

/// Deterministic pseudo-random symmetric tensor with entries in
/// [−scale, scale], identity Gram matrix.
MetrisedAlgebra make_random_algebra(int n, std::uint64_t seed, double scale);

}  // namespace cubal
