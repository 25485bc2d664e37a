#include "cubal/models.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "cubal/rng.hpp"

namespace cubal {

CounterexampleParams CounterexampleParams::with_defaults(int n) {
  CounterexampleParams p;
  p.n = n;
  for (int k = 2; k <= n; ++k)
    p.a.push_back(static_cast<double>(2 * k - 1) / (4.0 * n));
  return p;
}

void CounterexampleParams::validate() const {
  if (n < 2)
    throw std::invalid_argument("counterexample requires dimension >= 2");
  if (static_cast<int>(a.size()) != n - 1)
    throw std::invalid_argument("expected n-1 coefficients a_2..a_n");
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!(a[i] > 0.0 && a[i] < 0.5)) {
      std::ostringstream msg;
      msg << "coefficient a_" << (i + 2) << " = " << a[i]
          << " must lie in (0, 1/2)";
      throw std::invalid_argument(msg.str());
    }
    for (std::size_t j = 0; j < i; ++j)
      if (a[i] == a[j])
        throw std::invalid_argument("coefficients must be pairwise distinct");
  }
}

CubicForm counterexample_cubic(const CounterexampleParams& params) {
  params.validate();
  // u(x) = (1/3)x₁(x₁² + 3a₂x₂² + … + 3aₙxₙ²) in trilinear coefficients.
  CubicForm u(params.n);
  u.set_coeff(0, 0, 0, 2.0);
  for (int k = 1; k < params.n; ++k) u.set_coeff(0, k, k, 2.0 * params.a[k - 1]);
  return u;
}

MetrisedAlgebra make_counterexample(const CounterexampleParams& params) {
  return algebra_from_cubic(counterexample_cubic(params),
                            BilinearForm::identity(params.n));
}

std::vector<Eigen::VectorXd> counterexample_oracle(const CounterexampleParams& params) {
  params.validate();
  // Solutions of c² = c, i.e. 2c₁² + 2Σa_k c_k² = c₁ and 4a_k c_k c₁ = c_k:
  //   * every c_k = 0 (k ≥ 2): 2c₁² = c₁ leaves the nonzero root c₁ = 1/2;
  //   * two nonzero coordinates force c₁ = 1/(4a_i) = 1/(4a_j), impossible
  //     for distinct coefficients;
  //   * one nonzero c_i forces c_i² = (2a_i − 1)/(16 a_i³) < 0 since
  //     a_i < 1/2, impossible over the reals.
  for (double ak : params.a) {
    const double ci_squared = (2.0 * ak - 1.0) / (16.0 * ak * ak * ak);
    if (!(ci_squared < 0.0))
      throw std::runtime_error(
          "counterexample_oracle: case analysis violated by parameters");
  }
  Eigen::VectorXd c = Eigen::VectorXd::Zero(params.n);
  c[0] = 0.5;
  return {c};
}

CubicForm hadamard_cubic(int n) {
  if (n < 1) throw std::invalid_argument("hadamard algebra requires n >= 1");
  CubicForm u(n);
  for (int i = 0; i < n; ++i) u.set_coeff(i, i, i, 1.0);
  return u;
}

MetrisedAlgebra make_hadamard(int n) {
  return algebra_from_cubic(hadamard_cubic(n), BilinearForm::identity(n));
}

std::vector<Eigen::VectorXd> hadamard_idempotent_oracle(int n) {
  if (n < 1) throw std::invalid_argument("hadamard algebra requires n >= 1");
  if (n > 20) throw std::invalid_argument("oracle enumeration limited to n <= 20");
  std::vector<Eigen::VectorXd> out;
  for (unsigned mask = 1; mask < (1u << n); ++mask) {
    Eigen::VectorXd c = Eigen::VectorXd::Zero(n);
    for (int i = 0; i < n; ++i)
      if (mask & (1u << i)) c[i] = 1.0;
    out.push_back(std::move(c));
  }
  return out;
}

CubicForm random_cubic(int n, std::uint64_t seed, double scale) {
  if (n < 1) throw std::invalid_argument("dimension must be >= 1");
  if (!(scale >= 0.0)) throw std::invalid_argument("scale must be >= 0");
  CubicForm u(n);
  SplitMix64 gen(SplitMix64::scramble(seed) ^ 0xC001F00Du);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j)
      for (int k = j; k < n; ++k)
        u.set_coeff(i, j, k, gen.uniform(-scale, scale));
  return u;
}

MetrisedAlgebra make_random_algebra(int n, std::uint64_t seed, double scale) {
  return algebra_from_cubic(random_cubic(n, seed, scale),
                            BilinearForm::identity(n));
}

}  // namespace cubal
