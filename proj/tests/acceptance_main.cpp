// Acceptance suite: one line per criterion, nonzero exit on any failure.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "cubal/algebra_io.hpp"
#include "cubal/calculus.hpp"
#include "cubal/commands.hpp"
#include "cubal/models.hpp"
#include "cubal/peirce.hpp"
#include "cubal/rng.hpp"
#include "cubal/sphere_search.hpp"

using namespace cubal;
using Eigen::MatrixXd;
using Eigen::VectorXd;

namespace {

struct Check {
  bool ok = true;
  std::ostringstream detail;

  void require(bool condition, const std::string& what) {
    if (!condition) {
      ok = false;
      detail << (detail.str().empty() ? "" : "; ") << what;
    }
  }
};

SearchConfig cfg_with(int restarts) {
  SearchConfig cfg;
  cfg.restarts = restarts;
  return cfg;
}

MatrixXd perp_basis(const VectorXd& y) {
  const int n = static_cast<int>(y.size());
  Eigen::HouseholderQR<MatrixXd> qr(y);
  return MatrixXd(qr.householderQ()).rightCols(n - 1);
}

// 1. Counterexample reproduction: for n in {2..5} with default coefficients,
//    a 200-restart search finds exactly the oracle idempotent (1/2, 0, ..., 0)
//    within 1e-7, in at most 10 seconds per instance.
bool criterion_counterexample(Check& check) {
  for (int n = 2; n <= 5; ++n) {
    const CounterexampleParams params = CounterexampleParams::with_defaults(n);
    const MetrisedAlgebra algebra = make_counterexample(params);
    const std::vector<VectorXd> oracle = counterexample_oracle(params);

    const auto start = std::chrono::steady_clock::now();
    const IdempotentSearchResult found =
        find_idempotents(algebra, cfg_with(200));
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();

    std::ostringstream tag;
    tag << "n=" << n << ": ";
    check.require(found.idempotents.size() == 1,
                  tag.str() + "expected exactly one idempotent, got " +
                      std::to_string(found.idempotents.size()));
    if (found.idempotents.size() == 1)
      check.require((found.idempotents[0].c - oracle[0]).norm() <= 1e-7,
                    tag.str() + "idempotent differs from the oracle");
    check.require(seconds <= 10.0,
                  tag.str() + "runtime " + std::to_string(seconds) + "s > 10s");
  }
  return check.ok;
}

// 2. Oddness gap: on every counterexample instance the sphere maximizer and
//    minimizer form an anti-collinear pair: x- = -x+ within 1e-6 and
//    f(x-) = -f(x+) within 1e-10.
bool criterion_oddness_gap(Check& check) {
  for (int n = 2; n <= 5; ++n) {
    const MetrisedAlgebra algebra =
        make_counterexample(CounterexampleParams::with_defaults(n));
    const OddnessGapReport gap =
        demonstrate_oddness_gap(algebra, cfg_with(100));
    std::ostringstream tag;
    tag << "n=" << n << ": ";
    check.require(gap.pair_distance <= 1e-6,
                  tag.str() + "|x- + x+| = " + std::to_string(gap.pair_distance));
    check.require(gap.odd_symmetry_gap <= 1e-10,
                  tag.str() + "|f(x-) + f(x+)| = " +
                      std::to_string(gap.odd_symmetry_gap));
  }
  return check.ok;
}

// 3. Extremality of the global maximum on 50 random algebras, seeds 1..50,
//    n in {3..6}: positive multiplier, idempotent residual <= 1e-8, spectrum
//    on the complement <= 1/2 + 1e-6, eigenvalue 1 simple. No exceptions.
bool criterion_extremality(Check& check) {
  for (std::uint64_t seed = 1; seed <= 50; ++seed) {
    const int n = 3 + static_cast<int>((seed - 1) % 4);
    const MetrisedAlgebra algebra = make_random_algebra(n, seed, 1.0);
    std::ostringstream tag;
    tag << "seed=" << seed << " n=" << n << ": ";
    if (algebra.is_zero()) {
      check.require(false, tag.str() + "unexpected zero algebra");
      continue;
    }
    const SearchResult sr = maximize_on_sphere(algebra, cfg_with(100));
    if (sr.points.empty()) {
      check.require(false, tag.str() + "search found nothing");
      continue;
    }
    const StationaryPoint& top = sr.points.front();
    check.require(top.lambda > 0.0, tag.str() + "top multiplier not positive");
    const IdempotentOutcome outcome = stationary_to_idempotent(algebra, top);
    if (!outcome.record) {
      check.require(false, tag.str() + "no idempotent from the top point");
      continue;
    }
    const IdempotentRecord& rec = *outcome.record;
    check.require(rec.residual <= 1e-8,
                  tag.str() + "residual " + std::to_string(rec.residual));
    double max_perp = -1e300;
    for (double v : rec.spectrum_on_perp) max_perp = std::max(max_perp, v);
    check.require(max_perp <= 0.5 + 1e-6,
                  tag.str() + "L_c on the complement reaches " +
                      std::to_string(max_perp));
    check.require(rec.eigenvalue_one_simple,
                  tag.str() + "eigenvalue 1 not simple");
  }
  return check.ok;
}

// 4. Decomposability both ways at desk scale: (a) Hadamard n in {2,3,4},
//    every 0/1 idempotent has dim V_c(1) = number of ones and splits exactly
//    when that is >= 2, with verified pairs; (b) the counterexample
//    idempotent is indecomposable with dim V_c(1) = 1, matching the oracle.
bool criterion_decomposability(Check& check) {
  const SearchConfig cfg = cfg_with(60);
  for (int n = 2; n <= 4; ++n) {
    const MetrisedAlgebra algebra = make_hadamard(n);
    for (const VectorXd& c : hadamard_idempotent_oracle(n)) {
      const int ones = static_cast<int>(std::lround(c.sum()));
      std::ostringstream tag;
      tag << "hadamard n=" << n << " |c|_1=" << ones << ": ";

      const PeirceReport report = decide_decomposable(algebra, c, cfg);
      check.require(report.dim_v1 == ones,
                    tag.str() + "dim V_c(1) = " + std::to_string(report.dim_v1));
      if (ones >= 2) {
        check.require(report.verdict == DecompositionVerdict::kDecomposable,
                      tag.str() + "expected decomposable, got " +
                          to_string(report.verdict));
        if (report.decomposition) {
          const auto& [c1, c2] = *report.decomposition;
          check.require((c1 + c2 - c).norm() <= 1e-8,
                        tag.str() + "c1 + c2 != c");
          check.require(report.c1_residual <= 1e-8 && report.c2_residual <= 1e-8,
                        tag.str() + "idempotency residuals too large");
          check.require(report.cross_residual <= 1e-8,
                        tag.str() + "|c1 c2| = " +
                            std::to_string(report.cross_residual));
        } else {
          check.require(false, tag.str() + "missing decomposition pair");
        }
      } else {
        check.require(report.verdict == DecompositionVerdict::kIndecomposable,
                      tag.str() + "expected indecomposable, got " +
                          to_string(report.verdict));
      }
    }
  }

  for (int n : {2, 3}) {
    const CounterexampleParams params = CounterexampleParams::with_defaults(n);
    const std::vector<VectorXd> oracle = counterexample_oracle(params);
    std::ostringstream tag;
    tag << "counterexample n=" << n << ": ";
    check.require(oracle.size() == 1, tag.str() + "oracle is not a singleton");
    const PeirceReport report =
        decide_decomposable(make_counterexample(params), oracle[0], cfg);
    check.require(report.dim_v1 == 1,
                  tag.str() + "dim V_c(1) = " + std::to_string(report.dim_v1));
    check.require(report.verdict == DecompositionVerdict::kIndecomposable,
                  tag.str() + "expected indecomposable, got " +
                      to_string(report.verdict));
  }
  return check.ok;
}

// 5. Unit split: on Hadamard n in {2,3,4} the unital algebra yields an
//    extremal idempotent distinct from the unit whose complement is also
//    idempotent to 1e-8 -- three distinct nonzero idempotents.
bool criterion_unit_split(Check& check) {
  for (int n = 2; n <= 4; ++n) {
    const MetrisedAlgebra algebra = make_hadamard(n);
    std::string diagnostic;
    const auto split = split_unit(algebra, cfg_with(60), &diagnostic);
    std::ostringstream tag;
    tag << "hadamard n=" << n << ": ";
    if (!split) {
      check.require(false, tag.str() + "no split: " + diagnostic);
      continue;
    }
    check.require(split->c_prime_residual <= 1e-8,
                  tag.str() + "c' residual too large");
    check.require(split->complement_residual <= 1e-8,
                  tag.str() + "complement residual too large");
    const std::vector<VectorXd> three = {split->unit, split->c_prime,
                                         split->complement};
    for (const VectorXd& v : three)
      check.require(algebra.norm(v) > 1e-6, tag.str() + "zero idempotent");
    for (std::size_t i = 0; i < three.size(); ++i)
      for (std::size_t j = i + 1; j < three.size(); ++j)
        check.require(algebra.norm(three[i] - three[j]) > 1e-6,
                      tag.str() + "idempotents not distinct");
  }
  return check.ok;
}

// 6. Calculus identities on 100 random (algebra, point) pairs, plus the
//    idempotent-hessian restriction on searched and reference idempotents.
bool criterion_calculus(Check& check) {
  auto restriction_gap = [](const MetrisedAlgebra& algebra, const VectorXd& c) {
    const OrthonormalizedAlgebra ortho = orthonormalize(algebra);
    const VectorXd y = ortho.to_ortho * c;
    const MatrixXd perp = perp_basis(y);
    const MatrixXd h = eval_f(algebra, c).hessian;
    const MatrixXd lc = ortho.algebra.left_mult_matrix(y);
    const double cn = algebra.norm(c);
    const MatrixXd expected =
        3.0 *
        (2.0 * perp.transpose() * lc * perp -
         MatrixXd::Identity(perp.cols(), perp.cols())) /
        (cn * cn * cn);
    return (perp.transpose() * h * perp - expected).cwiseAbs().maxCoeff();
  };

  for (int rep = 0; rep < 100; ++rep) {
    const int n = 2 + rep % 5;
    const MetrisedAlgebra algebra =
        make_random_algebra(n, 1000 + static_cast<std::uint64_t>(rep), 1.0);
    SplitMix64 gen = restart_stream(555, static_cast<std::uint64_t>(rep));
    const VectorXd x = random_unit_vector(gen, n);
    std::ostringstream tag;
    tag << "pair " << rep << " (n=" << n << "): ";

    check.require((grad_u(algebra, x) - 0.5 * algebra.square(x)).norm() <= 1e-12,
                  tag.str() + "grad_u differs from x^2/2");
    check.require(
        (hess_u(algebra, x) - algebra.left_mult_matrix(x)).norm() <= 1e-12,
        tag.str() + "hess_u differs from L_x");

    const FdReport fd = fd_check(algebra, x, 1e-5);
    check.require(fd.grad_u_error <= 1e-6, tag.str() + "grad_u FD error " +
                                               std::to_string(fd.grad_u_error));
    check.require(fd.hess_u_error <= 1e-6, tag.str() + "hess_u FD error " +
                                               std::to_string(fd.hess_u_error));
    check.require(fd.f_grad_error <= 1e-6, tag.str() + "f gradient FD error " +
                                               std::to_string(fd.f_grad_error));
    check.require(fd.f_hess_error <= 1e-6, tag.str() + "f hessian FD error " +
                                               std::to_string(fd.f_hess_error));

    if (rep % 5 == 0 && n >= 2) {
      const IdempotentSearchResult found =
          find_idempotents(algebra, cfg_with(30));
      if (!found.idempotents.empty()) {
        const double gap = restriction_gap(algebra, found.idempotents[0].c);
        check.require(gap <= 1e-8, tag.str() + "idempotent restriction gap " +
                                       std::to_string(gap));
      }
    }
  }

  // reference idempotents with unit and non-unit norms
  {
    CounterexampleParams params;
    params.n = 2;
    params.a = {0.25};
    VectorXd half(2);
    half << 0.5, 0.0;
    check.require(restriction_gap(make_counterexample(params), half) <= 1e-8,
                  "counterexample restriction gap too large");
    VectorXd c110(3);
    c110 << 1.0, 1.0, 0.0;
    check.require(restriction_gap(make_hadamard(3), c110) <= 1e-8,
                  "hadamard (1,1,0) restriction gap too large");
    check.require(
        restriction_gap(make_hadamard(3), VectorXd::Unit(3, 0)) <= 1e-8,
        "hadamard e1 restriction gap too large");
  }
  return check.ok;
}

// 7. Structural suite over every constructed algebra, including one with a
//    non-identity SPD gram: residuals <= 1e-9 and tensor round trip <= 1e-10.
bool criterion_structure(Check& check) {
  std::vector<std::pair<std::string, MetrisedAlgebra>> algebras;
  for (int n = 2; n <= 5; ++n)
    algebras.emplace_back(
        "counterexample n=" + std::to_string(n),
        make_counterexample(CounterexampleParams::with_defaults(n)));
  for (int n = 1; n <= 4; ++n)
    algebras.emplace_back("hadamard n=" + std::to_string(n), make_hadamard(n));
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const int n = 2 + static_cast<int>(seed % 5);
    algebras.emplace_back("random seed=" + std::to_string(seed),
                          make_random_algebra(n, seed, 1.0));
  }
  {
    MatrixXd gram(3, 3);
    gram << 2.0, 0.3, 0.0, 0.3, 1.5, -0.2, 0.0, -0.2, 1.0;
    algebras.emplace_back(
        "non-identity gram",
        algebra_from_cubic(random_cubic(3, 99, 1.0), BilinearForm(gram)));
  }

  for (const auto& [name, algebra] : algebras) {
    const StructureReport sr = algebra.check_structure();
    check.require(sr.commutativity <= 1e-9, name + ": commutativity residual");
    check.require(sr.associativity <= 1e-9, name + ": associativity residual");
    check.require(sr.self_adjointness <= 1e-9,
                  name + ": self-adjointness residual");

    const CubicForm u = cubic_from_algebra(algebra);
    const MetrisedAlgebra again = algebra_from_cubic(u, algebra.form());
    const CubicForm back = cubic_from_algebra(again);
    double worst = 0.0;
    for (std::size_t i = 0; i < u.packed().size(); ++i)
      worst = std::max(worst, std::abs(u.packed()[i] - back.packed()[i]));
    check.require(worst <= 1e-10, name + ": tensor round trip " +
                                      std::to_string(worst));
  }
  return check.ok;
}

// 8. Determinism: identical inputs and seeds give byte-identical reports.
bool criterion_determinism(Check& check) {
  const std::filesystem::path dir = std::filesystem::temp_directory_path();
  const std::filesystem::path file = dir / "cubal_acceptance_input.json";

  GenerateOptions opts;
  opts.family = "random";
  opts.n = 4;
  opts.seed = 11;
  const std::string text1 = cmd_generate(opts);
  const std::string text2 = cmd_generate(opts);
  check.require(text1 == text2, "generate output not byte-identical");

  std::ofstream(file, std::ios::binary) << text1;
  const SearchConfig cfg = cfg_with(40);
  check.require(cmd_idempotents(file.string(), cfg).text() ==
                    cmd_idempotents(file.string(), cfg).text(),
                "idempotents reports differ between runs");
  check.require(cmd_gap_demo(file.string(), cfg).text() ==
                    cmd_gap_demo(file.string(), cfg).text(),
                "gap-demo reports differ between runs");
  check.require(cmd_check(file.string()).text() == cmd_check(file.string()).text(),
                "check reports differ between runs");

  std::error_code ec;
  std::filesystem::remove(file, ec);
  return check.ok;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<bool(Check&)>>> criteria = {
      {"counterexample reproduction (single idempotent, oracle match, <=10s)",
       criterion_counterexample},
      {"oddness gap (max/min pair anti-collinear on the counterexample)",
       criterion_oddness_gap},
      {"extremality of the global maximum on 50 random algebras",
       criterion_extremality},
      {"decomposability both directions at desk scale", criterion_decomposability},
      {"unit split into three distinct nonzero idempotents", criterion_unit_split},
      {"calculus identities and finite-difference agreement", criterion_calculus},
      {"structural residuals and tensor round trips", criterion_structure},
      {"byte-identical reports for identical inputs", criterion_determinism},
  };

  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Check check;
    bool ok = false;
    std::string blowup;
    try {
      ok = criteria[i].second(check);
    } catch (const std::exception& e) {
      ok = false;
      blowup = e.what();
    }
    std::printf("[%s] criterion %zu: %s\n", ok ? "PASS" : "FAIL", i + 1,
                criteria[i].first.c_str());
    if (!ok) {
      ++failures;
      const std::string detail =
          blowup.empty() ? check.detail.str() : "exception: " + blowup;
      if (!detail.empty()) std::printf("       %s\n", detail.c_str());
    }
  }
  std::printf("%d/%zu criteria passed\n",
              static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures;
}
