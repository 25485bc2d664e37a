#include <doctest.h>

#include <cmath>

#include "cubal/calculus.hpp"
#include "cubal/models.hpp"
#include "cubal/rng.hpp"
#include "oracles.hpp"

using cubal::MetrisedAlgebra;
using Eigen::MatrixXd;
using Eigen::VectorXd;

namespace {

cubal::CounterexampleParams quarter_params() {
  cubal::CounterexampleParams p;
  p.n = 2;
  p.a = {0.25};
  return p;
}

}  // namespace

TEST_CASE("grad_u is half the square") {
  const MetrisedAlgebra h3 = cubal::make_hadamard(3);
  VectorXd x(3);
  x << 1, 2, 3;
  VectorXd expected(3);
  expected << 0.5, 2.0, 4.5;
  CHECK((cubal::grad_u(h3, x) - expected).norm() <= 1e-14);
  CHECK(cubal::grad_u(h3, VectorXd::Zero(3)).norm() == 0.0);

  const MetrisedAlgebra cx = cubal::make_counterexample(quarter_params());
  VectorXd e2 = VectorXd::Unit(2, 1);
  VectorXd grad_expected(2);
  grad_expected << 0.25, 0.0;
  CHECK((cubal::grad_u(cx, e2) - grad_expected).norm() <= 1e-14);

  cubal::SplitMix64 gen(8);
  const MetrisedAlgebra r = cubal::make_random_algebra(4, 31, 1.0);
  for (int rep = 0; rep < 20; ++rep) {
    const VectorXd p = cubal::random_unit_vector(gen, 4) * 2.0;
    CHECK((cubal::grad_u(r, p) - 0.5 * r.square(p)).norm() <= 1e-14);
  }
}

TEST_CASE("hess_u is the multiplication operator") {
  const MetrisedAlgebra h3 = cubal::make_hadamard(3);
  CHECK(cubal::hess_u(h3, VectorXd::Zero(3)).norm() == 0.0);
  VectorXd x(3);
  x << 1, 2, 3;
  CHECK((cubal::hess_u(h3, x) - x.asDiagonal().toDenseMatrix()).norm() <= 1e-14);

  const MetrisedAlgebra cx = cubal::make_counterexample(quarter_params());
  MatrixXd expected(2, 2);
  expected << 2.0, 0.0, 0.0, 0.5;
  CHECK((cubal::hess_u(cx, VectorXd::Unit(2, 0)) - expected).norm() <= 1e-14);

  const MetrisedAlgebra r = cubal::make_random_algebra(5, 13, 1.0);
  cubal::SplitMix64 gen(14);
  for (int rep = 0; rep < 20; ++rep) {
    const VectorXd p = cubal::random_unit_vector(gen, 5) * gen.uniform(0.2, 2.0);
    const VectorXd q = cubal::random_unit_vector(gen, 5) * gen.uniform(0.2, 2.0);
    CHECK((cubal::hess_u(r, p) * q - r.multiply(p, q)).norm() <= 1e-12);
  }
}

TEST_CASE("f is odd, degree-zero homogeneous and tangential") {
  const MetrisedAlgebra r = cubal::make_random_algebra(4, 17, 1.0);
  cubal::SplitMix64 gen(18);
  for (int rep = 0; rep < 25; ++rep) {
    const VectorXd x = cubal::random_unit_vector(gen, 4) * gen.uniform(0.3, 2.0);
    const cubal::RayleighEval f = cubal::eval_f(r, x);
    CHECK(cubal::eval_f(r, VectorXd(-x)).value ==
          doctest::Approx(-f.value).epsilon(1e-12));
    for (double t : {0.5, 3.0}) {
      CHECK(cubal::eval_f(r, VectorXd(t * x)).value ==
            doctest::Approx(f.value).epsilon(1e-12));
      CHECK(cubal::eval_f(r, VectorXd(-t * x)).value ==
            doctest::Approx(-f.value).epsilon(1e-12));
    }
    // Euler relations for degree zero: ⟨Df,x⟩ = 0 and D²f·x = −Df
    CHECK(std::abs(f.gradient.dot(x)) <= 1e-10);
    CHECK((f.hessian * x + f.gradient).norm() <= 1e-9);
  }
  CHECK_THROWS_AS(cubal::eval_f(r, VectorXd::Zero(4)), std::invalid_argument);
}

TEST_CASE("f is stationary exactly at points with parallel square") {
  const MetrisedAlgebra h3 = cubal::make_hadamard(3);
  const cubal::RayleighEval at_e1 = cubal::eval_f(h3, VectorXd::Unit(3, 0));
  CHECK(at_e1.value == doctest::Approx(1.0));
  CHECK(at_e1.gradient.norm() <= 1e-12);

  const MetrisedAlgebra cx = cubal::make_counterexample(quarter_params());
  VectorXd xi(2);
  xi << 1.0, 0.0;
  const cubal::RayleighEval at_xi = cubal::eval_f(cx, xi);
  CHECK(at_xi.value == doctest::Approx(2.0));
  CHECK(at_xi.gradient.norm() <= 1e-10);

  // a non-stationary point has a visible gradient
  VectorXd x(2);
  x << 0.6, 0.8;
  CHECK(cubal::eval_f(cx, x).gradient.norm() > 1e-3);
}

TEST_CASE("analytic f derivatives match an independent finite-difference oracle") {
  // f for the counterexample family evaluated from monomials only
  auto f_counter = [](const VectorXd& x) -> long double {
    const long double x1 = x[0], x2 = x[1];
    const long double num = 2.0L * x1 * x1 * x1 + 1.5L * x1 * x2 * x2;
    const long double r2 = x1 * x1 + x2 * x2;
    return num / (sqrtl(r2) * r2);
  };
  const MetrisedAlgebra cx = cubal::make_counterexample(quarter_params());
  cubal::SplitMix64 gen(19);
  for (int rep = 0; rep < 10; ++rep) {
    const VectorXd x = cubal::random_unit_vector(gen, 2);
    const cubal::RayleighEval f = cubal::eval_f(cx, x);
    const VectorXd g_fd = oracles::fd_gradient(f_counter, x, 1e-5);
    const MatrixXd h_fd = oracles::fd_hessian(f_counter, x, 1e-5);
    CHECK((g_fd - f.gradient).cwiseAbs().maxCoeff() /
              std::max(1.0, f.gradient.cwiseAbs().maxCoeff()) <=
          1e-6);
    CHECK((h_fd - f.hessian).cwiseAbs().maxCoeff() /
              std::max(1.0, f.hessian.cwiseAbs().maxCoeff()) <=
          1e-6);
  }
}

TEST_CASE("fd_check reports small errors on healthy algebras") {
  cubal::SplitMix64 gen(20);
  const VectorXd x3 = cubal::random_unit_vector(gen, 3);
  const cubal::FdReport h = cubal::fd_check(cubal::make_hadamard(3), x3);
  CHECK(h.max_error() <= 1e-6);

  const cubal::CounterexampleParams p4 = cubal::CounterexampleParams::with_defaults(4);
  const VectorXd x4 = cubal::random_unit_vector(gen, 4);
  CHECK(cubal::fd_check(cubal::make_counterexample(p4), x4).max_error() <= 1e-6);

  const VectorXd x5 = cubal::random_unit_vector(gen, 5);
  CHECK(cubal::fd_check(cubal::make_random_algebra(5, 23, 1.0), x5).max_error() <=
        1e-6);

  // zero algebra: every derivative vanishes identically
  const MetrisedAlgebra zero =
      cubal::algebra_from_cubic(cubal::CubicForm(3), cubal::BilinearForm::identity(3));
  const cubal::FdReport zr = cubal::fd_check(zero, x3);
  CHECK(zr.grad_u_error <= 1e-12);
  CHECK(zr.hess_u_error <= 1e-12);

  CHECK_THROWS_AS(cubal::fd_check(cubal::make_hadamard(3), x3, 2.0),
                  std::invalid_argument);
  CHECK_THROWS_AS(cubal::fd_check(cubal::make_hadamard(3), x3, 0.0),
                  std::invalid_argument);
}

TEST_CASE("fd_check works through a non-identity gram") {
  MatrixXd gram(3, 3);
  gram << 2.0, 0.3, 0.0, 0.3, 1.5, -0.2, 0.0, -0.2, 1.0;
  const MetrisedAlgebra a = cubal::algebra_from_cubic(
      cubal::random_cubic(3, 41, 1.0), cubal::BilinearForm(gram));
  cubal::SplitMix64 gen(21);
  const VectorXd x = cubal::random_unit_vector(gen, 3);
  CHECK(cubal::fd_check(a, x).max_error() <= 1e-6);
}

TEST_CASE("f-hessian at an idempotent restricted to the complement") {
  // counterexample: on c⊥ = span{e₂} the restriction is 3(2L_c − Id)/|c|³,
  // here 3(1/2 − 1)/(1/8) = −12, while c itself is a neutral direction of
  // the comparison (rank-one terms live along c).
  const MetrisedAlgebra cx = cubal::make_counterexample(quarter_params());
  VectorXd c(2);
  c << 0.5, 0.0;
  const cubal::RayleighEval f = cubal::eval_f(cx, c);
  const VectorXd e2 = VectorXd::Unit(2, 1);
  CHECK(e2.dot(f.hessian * e2) == doctest::Approx(-12.0).epsilon(1e-10));

  // Hadamard, idempotent of non-unit norm: c = (1,1,0), |c| = √2
  const MetrisedAlgebra h3 = cubal::make_hadamard(3);
  VectorXd c2(3);
  c2 << 1.0, 1.0, 0.0;
  const cubal::RayleighEval f2 = cubal::eval_f(h3, c2);
  const double scale = std::pow(std::sqrt(2.0), 3);
  MatrixXd perp(3, 2);
  perp.col(0) = (VectorXd(3) << 1, -1, 0).finished() / std::sqrt(2.0);
  perp.col(1) = VectorXd::Unit(3, 2);
  const MatrixXd lc = h3.left_mult_matrix(c2);
  const MatrixXd expected =
      3.0 * (2.0 * perp.transpose() * lc * perp - MatrixXd::Identity(2, 2)) /
      scale;
  const MatrixXd restricted = perp.transpose() * f2.hessian * perp;
  CHECK((restricted - expected).cwiseAbs().maxCoeff() <= 1e-8);

  // unit-norm idempotent: the same comparison with |c| = 1
  const cubal::RayleighEval f3 = cubal::eval_f(h3, VectorXd::Unit(3, 0));
  MatrixXd perp1(3, 2);
  perp1.col(0) = VectorXd::Unit(3, 1);
  perp1.col(1) = VectorXd::Unit(3, 2);
  const MatrixXd l1 = h3.left_mult_matrix(VectorXd::Unit(3, 0));
  const MatrixXd expected1 =
      3.0 * (2.0 * perp1.transpose() * l1 * perp1 - MatrixXd::Identity(2, 2));
  CHECK((perp1.transpose() * f3.hessian * perp1 - expected1).cwiseAbs().maxCoeff() <=
        1e-8);
}
