#include "cubal/peirce.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace cubal {

std::string to_string(DecompositionVerdict verdict) {
  switch (verdict) {
    case DecompositionVerdict::kIndecomposable: return "indecomposable";
    case DecompositionVerdict::kDecomposable: return "decomposable";
    case DecompositionVerdict::kInconclusive: return "inconclusive";
  }
  return "inconclusive";
}

std::vector<EigenCluster> peirce_spectrum(const MetrisedAlgebra& algebra,
                                          const Eigen::VectorXd& c,
                                          double tol_idem, double tol_eig) {
  const double residual = algebra.norm(algebra.square(c) - c);
  if (residual > tol_idem || !(algebra.norm(c) > tol_idem)) {
    std::ostringstream msg;
    msg << "peirce_spectrum: c is not an idempotent (residual " << residual
        << ", tol " << tol_idem << ")";
    throw std::invalid_argument(msg.str());
  }

  const OrthonormalizedAlgebra ortho = orthonormalize(algebra);
  const int n = algebra.dim();
  Eigen::MatrixXd L = ortho.algebra.left_mult_matrix(ortho.to_ortho * c);
  L = ((L + L.transpose()) / 2.0).eval();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(L);
  if (es.info() != Eigen::Success)
    throw std::runtime_error("peirce_spectrum: eigensolver failed");

  std::vector<EigenCluster> clusters;
  for (int i = 0; i < n; ++i) {
    const double value = es.eigenvalues()[i];
    if (clusters.empty() ||
        value - (clusters.back().value / clusters.back().multiplicity) >
            tol_eig) {
      clusters.push_back(EigenCluster{value, 1, {}});
    } else {
      clusters.back().value += value;
      clusters.back().multiplicity += 1;
    }
    clusters.back().basis.push_back(ortho.from_ortho * es.eigenvectors().col(i));
  }
  for (EigenCluster& cl : clusters) cl.value /= cl.multiplicity;
  std::sort(clusters.begin(), clusters.end(),
            [](const EigenCluster& a, const EigenCluster& b) {
              return a.value > b.value;
            });
  return clusters;
}

SubalgebraCheck check_subalgebra(const MetrisedAlgebra& algebra,
                                 const std::vector<Eigen::VectorXd>& basis,
                                 double tol_sub) {
  if (basis.empty())
    throw std::invalid_argument("check_subalgebra: empty basis");
  for (std::size_t i = 0; i < basis.size(); ++i)
    for (std::size_t j = i; j < basis.size(); ++j) {
      const double expected = (i == j) ? 1.0 : 0.0;
      if (std::abs(algebra.inner(basis[i], basis[j]) - expected) > 1e-8)
        throw std::invalid_argument("check_subalgebra: basis not orthonormal");
    }

  SubalgebraCheck out;
  out.tol = tol_sub;
  for (std::size_t i = 0; i < basis.size(); ++i)
    for (std::size_t j = i; j < basis.size(); ++j) {
      Eigen::VectorXd p = algebra.multiply(basis[i], basis[j]);
      for (const Eigen::VectorXd& b : basis) p -= algebra.inner(p, b) * b;
      out.max_residual = std::max(out.max_residual, algebra.norm(p));
    }
  out.closed = out.max_residual <= tol_sub;
  return out;
}

MetrisedAlgebra build_restricted_algebra(const MetrisedAlgebra& algebra,
                                         const std::vector<Eigen::VectorXd>& basis) {
  const SubalgebraCheck check = check_subalgebra(algebra, basis);
  if (!check.closed) {
    std::ostringstream msg;
    msg << "build_restricted_algebra: span is not a subalgebra (residual "
        << check.max_residual << ", tol " << check.tol << ")";
    throw std::invalid_argument(msg.str());
  }

  const int m = static_cast<int>(basis.size());
  std::vector<Eigen::MatrixXd> product(m, Eigen::MatrixXd::Zero(m, m));
  for (int i = 0; i < m; ++i)
    for (int j = i; j < m; ++j) {
      const Eigen::VectorXd p = algebra.multiply(basis[i], basis[j]);
      for (int k = 0; k < m; ++k) {
        const double w = algebra.inner(p, basis[k]);
        product[k](i, j) = w;
        product[k](j, i) = w;
      }
    }
  return MetrisedAlgebra(std::move(product), BilinearForm::identity(m));
}

PeirceReport decide_decomposable(const MetrisedAlgebra& algebra,
                                 const Eigen::VectorXd& c,
                                 const SearchConfig& cfg) {
  cfg.validate();
  PeirceReport report;
  report.c = c;

  const std::vector<EigenCluster> clusters =
      peirce_spectrum(algebra, c, cfg.tol_idem, cfg.tol_eig);
  for (const EigenCluster& cl : clusters)
    report.eigenvalues.emplace_back(cl.value, cl.multiplicity);

  const EigenCluster* v1 = nullptr;
  for (const EigenCluster& cl : clusters)
    if (v1 == nullptr ||
        std::abs(cl.value - 1.0) < std::abs(v1->value - 1.0))
      v1 = &cl;
  if (v1 == nullptr || std::abs(v1->value - 1.0) > cfg.tol_eig)
    throw std::runtime_error(
        "decide_decomposable: L_c has no eigenvalue near 1");
  report.v1_basis = v1->basis;
  report.dim_v1 = v1->multiplicity;

  const SubalgebraCheck closure = check_subalgebra(algebra, report.v1_basis);
  report.v1_is_subalgebra = closure.closed;
  report.subalgebra_residual = closure.max_residual;

  if (report.dim_v1 == 1) {
    report.verdict = DecompositionVerdict::kIndecomposable;
    return report;
  }
  if (!closure.closed) {
    std::ostringstream msg;
    msg << "V_c(1) is not closed under the product (residual "
        << closure.max_residual << " > tol " << closure.tol
        << "); decomposability cannot be decided on this eigenspace";
    report.verdict = DecompositionVerdict::kInconclusive;
    report.diagnostic = msg.str();
    return report;
  }

  // c acts as the unit of the restricted algebra; an extremal idempotent of
  // the restriction distinct from that unit splits c.
  const MetrisedAlgebra restricted =
      build_restricted_algebra(algebra, report.v1_basis);
  Eigen::VectorXd c_w(report.dim_v1);
  for (int k = 0; k < report.dim_v1; ++k)
    c_w[k] = algebra.inner(c, report.v1_basis[k]);
  const Eigen::MatrixXd unit_gap =
      restricted.left_mult_matrix(c_w) -
      Eigen::MatrixXd::Identity(report.dim_v1, report.dim_v1);
  if (unit_gap.cwiseAbs().maxCoeff() > cfg.tol_eig) {
    std::ostringstream msg;
    msg << "projection of c is not a unit of V_c(1) (|L_c - I| = "
        << unit_gap.cwiseAbs().maxCoeff() << ")";
    report.verdict = DecompositionVerdict::kInconclusive;
    report.diagnostic = msg.str();
    return report;
  }

  const IdempotentSearchResult sub = find_idempotents(restricted, cfg);
  for (const IdempotentRecord& cand : sub.idempotents) {
    if ((cand.c - c_w).norm() <= cfg.dedup_radius) continue;
    if (cand.residual > cfg.tol_idem) continue;
    Eigen::VectorXd c1 = Eigen::VectorXd::Zero(algebra.dim());
    for (int k = 0; k < report.dim_v1; ++k)
      c1 += cand.c[k] * report.v1_basis[k];
    const Eigen::VectorXd c2 = c - c1;

    const double c1_res = algebra.norm(algebra.square(c1) - c1);
    const double c2_res = algebra.norm(algebra.square(c2) - c2);
    const double cross = algebra.norm(algebra.multiply(c1, c2));
    if (c1_res > cfg.tol_idem || c2_res > cfg.tol_idem || cross > cfg.tol_idem)
      continue;
    if (algebra.norm(c2) <= cfg.dedup_radius) continue;

    report.decomposition = std::make_pair(c1, c2);
    report.c1_residual = c1_res;
    report.c2_residual = c2_res;
    report.cross_residual = cross;
    report.reverify_residual =
        std::max(algebra.norm(algebra.multiply(c, c1) - c1),
                 algebra.norm(algebra.multiply(c, c2) - c2));
    report.verdict = DecompositionVerdict::kDecomposable;
    return report;
  }

  std::ostringstream msg;
  msg << "restricted search found no idempotent distinct from the unit after "
      << cfg.restarts << " restarts";
  report.verdict = DecompositionVerdict::kInconclusive;
  report.diagnostic = msg.str();
  return report;
}

UnitSearch find_unit(const MetrisedAlgebra& algebra, double tol_eig) {
  const int n = algebra.dim();
  Eigen::MatrixXd system(n * n, n);
  for (int i = 0; i < n; ++i) {
    const Eigen::MatrixXd L = algebra.left_mult_matrix(Eigen::VectorXd::Unit(n, i));
    system.col(i) = Eigen::Map<const Eigen::VectorXd>(L.data(), n * n);
  }
  const Eigen::MatrixXd identity = Eigen::MatrixXd::Identity(n, n);
  const Eigen::VectorXd rhs =
      Eigen::Map<const Eigen::VectorXd>(identity.data(), n * n);
  const Eigen::VectorXd e = system.colPivHouseholderQr().solve(rhs);

  UnitSearch out;
  out.residual = (algebra.left_mult_matrix(e) - identity).norm();
  if (out.residual <= tol_eig) out.unit = e;
  return out;
}

std::optional<UnitSplit> split_unit(const MetrisedAlgebra& algebra,
                                              const SearchConfig& cfg,
                                              std::string* diagnostic) {
  cfg.validate();
  auto fail = [&](const std::string& why) -> std::optional<UnitSplit> {
    if (diagnostic != nullptr) *diagnostic = why;
    return std::nullopt;
  };

  const UnitSearch us = find_unit(algebra, cfg.tol_eig);
  if (!us.unit) {
    std::ostringstream msg;
    msg << "no unit: least-squares residual " << us.residual << " exceeds tol "
        << cfg.tol_eig;
    return fail(msg.str());
  }
  if (algebra.dim() < 2) return fail("dimension < 2");

  const Eigen::VectorXd& e = *us.unit;
  const IdempotentSearchResult found = find_idempotents(algebra, cfg);
  for (const IdempotentRecord& cand : found.idempotents) {
    if (!cand.extremal) continue;
    if (algebra.norm(cand.c - e) <= cfg.dedup_radius) continue;
    const Eigen::VectorXd complement = e - cand.c;
    const double comp_res =
        algebra.norm(algebra.square(complement) - complement);
    if (comp_res > cfg.tol_idem) continue;
    UnitSplit split;
    split.unit = e;
    split.c_prime = cand.c;
    split.complement = complement;
    split.unit_residual = us.residual;
    split.c_prime_residual = cand.residual;
    split.complement_residual = comp_res;
    return split;
  }
  return fail("search produced no extremal idempotent distinct from the unit");
}

}  // namespace cubal
