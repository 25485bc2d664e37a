#include "cubal/sphere_search.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "cubal/calculus.hpp"
#include "cubal/rng.hpp"

namespace cubal {

namespace {

bool lex_less(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  return std::lexicographical_compare(a.data(), a.data() + a.size(), b.data(),
                                      b.data() + b.size());
}

/// f(x) for unit x of an identity-gram algebra.
double f_unit(const MetrisedAlgebra& oa, const Eigen::VectorXd& x) {
  return oa.square(x).dot(x);
}

/// Projected gradient ascent of direction * f with backtracking and the
/// normalization retraction.
Eigen::VectorXd ascend(const MetrisedAlgebra& oa, Eigen::VectorXd x,
                       double direction, int max_iters) {
  double eta = 1.0;
  double fx = direction * f_unit(oa, x);
  for (int iter = 0; iter < max_iters; ++iter) {
    const Eigen::VectorXd sq = oa.square(x);
    const double lam = sq.dot(x);
    const Eigen::VectorXd g = direction * 3.0 * (sq - lam * x);
    const double gn2 = g.squaredNorm();
    if (gn2 <= 1e-24 * std::max(1.0, lam * lam)) break;

    bool moved = false;
    for (int bt = 0; bt < 60; ++bt) {
      const Eigen::VectorXd cand = (x + eta * g).normalized();
      const double fc = direction * f_unit(oa, cand);
      if (fc >= fx + 1e-4 * eta * gn2) {
        x = cand;
        fx = fc;
        eta = std::min(eta * 1.5, 1e6);
        moved = true;
        break;
      }
      eta *= 0.5;
    }
    if (!moved) break;
  }
  return x;
}

/// Descent of the stationarity residual ‖x² − ⟨x²,x⟩x‖² on the sphere;
/// reaches saddle points of f that neither ascent leg can.
Eigen::VectorXd residual_descent(const MetrisedAlgebra& oa, Eigen::VectorXd x,
                                 int max_iters) {
  double eta = 1.0;
  auto value = [&](const Eigen::VectorXd& p) {
    const Eigen::VectorXd sq = oa.square(p);
    return (sq - sq.dot(p) * p).squaredNorm();
  };
  double rx = value(x);
  for (int iter = 0; iter < max_iters; ++iter) {
    if (rx <= 1e-26) break;
    const Eigen::VectorXd sq = oa.square(x);
    const double lam = sq.dot(x);
    const Eigen::VectorXd w = sq - lam * x;
    Eigen::MatrixXd L = oa.left_mult_matrix(x);
    Eigen::VectorXd grad =
        2.0 * (2.0 * L * w - lam * w - 3.0 * x.dot(w) * sq);
    grad -= grad.dot(x) * x;
    const double gn2 = grad.squaredNorm();
    if (gn2 <= 1e-28 * std::max(1.0, rx)) break;

    bool moved = false;
    for (int bt = 0; bt < 60; ++bt) {
      const Eigen::VectorXd cand = (x - eta * grad).normalized();
      const double rc = value(cand);
      if (rc <= rx - 1e-4 * eta * gn2) {
        x = cand;
        rx = rc;
        eta = std::min(eta * 1.5, 1e6);
        moved = true;
        break;
      }
      eta *= 0.5;
    }
    if (!moved) break;
  }
  return x;
}

struct PolishResult {
  Eigen::VectorXd x;
  double lambda = 0.0;
  double residual = 0.0;
  bool ok = false;
};

/// Newton iteration on the Lagrange system {x² − λx = 0, ⟨x,x⟩ = 1}.
PolishResult newton_polish(const MetrisedAlgebra& oa, Eigen::VectorXd x,
                           int max_iters = 50) {
  const int n = oa.dim();
  PolishResult out;
  const double nx = x.norm();
  if (!(nx > 1e-12) || !x.allFinite()) return out;
  x /= nx;
  double lam = oa.square(x).dot(x);

  for (int iter = 0; iter < max_iters; ++iter) {
    const Eigen::VectorXd sq = oa.square(x);
    Eigen::VectorXd F(n + 1);
    F.head(n) = sq - lam * x;
    F[n] = 0.5 * (x.squaredNorm() - 1.0);
    if (F.norm() <= 1e-15 * std::max(1.0, std::abs(lam))) break;

    Eigen::MatrixXd J = Eigen::MatrixXd::Zero(n + 1, n + 1);
    J.topLeftCorner(n, n) =
        2.0 * oa.left_mult_matrix(x) -
        lam * Eigen::MatrixXd::Identity(n, n);
    J.block(0, n, n, 1) = -x;
    J.block(n, 0, 1, n) = x.transpose();
    Eigen::FullPivLU<Eigen::MatrixXd> lu(J);
    if (!lu.isInvertible()) return out;
    const Eigen::VectorXd delta = lu.solve(-F);
    if (!delta.allFinite() || delta.norm() > 1e3) return out;
    x += delta.head(n);
    lam += delta[n];
    if (!x.allFinite()) return out;
  }

  const double norm_final = x.norm();
  if (!(norm_final > 1e-12)) return out;
  x /= norm_final;
  const Eigen::VectorXd sq = oa.square(x);
  out.x = x;
  out.lambda = sq.dot(x);
  out.residual = (sq - out.lambda * x).norm();
  out.ok = true;
  return out;
}

}  // namespace

void SearchConfig::validate() const {
  if (restarts < 1) throw std::invalid_argument("restarts must be >= 1");
  if (max_iters < 1) throw std::invalid_argument("max_iters must be >= 1");
  if (!(tol_stat > 0.0) || !(tol_idem > 0.0) || !(tol_eig > 0.0))
    throw std::invalid_argument("tolerances must be positive");
  if (!(dedup_radius > tol_idem))
    throw std::invalid_argument("dedup_radius must exceed tol_idem");
}

SearchResult maximize_on_sphere(const MetrisedAlgebra& algebra,
                                const SearchConfig& cfg) {
  cfg.validate();
  SearchResult result;
  if (algebra.is_zero()) {
    result.note = "u ≡ 0";
    return result;
  }

  const OrthonormalizedAlgebra ortho = orthonormalize(algebra);
  const MetrisedAlgebra& oa = ortho.algebra;
  const int n = oa.dim();

  std::vector<Eigen::VectorXd> kept;  // ortho coordinates, collection order
  std::vector<double> kept_lambda, kept_residual;
  auto record = [&](const PolishResult& p) {
    if (!p.ok || p.residual > cfg.tol_stat) return false;
    for (const auto& q : kept)
      if ((q - p.x).norm() <= cfg.dedup_radius) return true;
    kept.push_back(p.x);
    kept_lambda.push_back(p.lambda);
    kept_residual.push_back(p.residual);
    return true;
  };

  for (int r = 0; r < cfg.restarts; ++r) {
    SplitMix64 gen = restart_stream(cfg.seed, static_cast<std::uint64_t>(r));
    const Eigen::VectorXd x0 = random_unit_vector(gen, n);
    bool any = false;
    any |= record(newton_polish(oa, ascend(oa, x0, +1.0, cfg.max_iters)));
    any |= record(newton_polish(oa, ascend(oa, x0, -1.0, cfg.max_iters)));
    any |= record(newton_polish(oa, residual_descent(oa, x0, cfg.max_iters)));
    if (!any) ++result.failed_restarts;
  }

  result.points.reserve(kept.size());
  for (std::size_t i = 0; i < kept.size(); ++i) {
    StationaryPoint p;
    Eigen::VectorXd x = ortho.from_ortho * kept[i];
    const double gnorm = algebra.norm(x);
    if (gnorm > 0.0) x /= gnorm;
    p.x = std::move(x);
    p.lambda = kept_lambda[i];
    p.f_value = kept_lambda[i];
    p.residual = kept_residual[i];
    p.kind = std::abs(p.lambda) <= cfg.tol_stat
                 ? StationaryKind::kNilSquare
                 : StationaryKind::kIdempotentGenerating;
    result.points.push_back(std::move(p));
  }

  std::sort(result.points.begin(), result.points.end(),
            [](const StationaryPoint& a, const StationaryPoint& b) {
              if (a.f_value != b.f_value) return a.f_value > b.f_value;
              return lex_less(a.x, b.x);
            });
  if (!result.points.empty()) result.points.front().global_max_candidate = true;
  return result;
}

IdempotentOutcome stationary_to_idempotent(const MetrisedAlgebra& algebra,
                                           const StationaryPoint& point,
                                           const SearchConfig& cfg) {
  IdempotentOutcome outcome;
  if (point.residual > cfg.tol_stat)
    throw std::invalid_argument("stationary point residual exceeds tol_stat");
  if (std::abs(point.lambda) <= cfg.tol_stat) {
    outcome.nil_square = true;
    return outcome;
  }

  const OrthonormalizedAlgebra ortho = orthonormalize(algebra);
  const MetrisedAlgebra& oa = ortho.algebra;
  const int n = oa.dim();
  Eigen::VectorXd c = ortho.to_ortho * (point.x / point.lambda);

  // One Newton pass on F(y) = y² − y; divergence keeps the unpolished scale.
  bool polished = true;
  {
    Eigen::VectorXd y = c;
    bool ok = true;
    for (int iter = 0; iter < 30; ++iter) {
      const Eigen::VectorXd F = oa.square(y) - y;
      if (F.norm() <= 1e-15) break;
      const Eigen::MatrixXd J = 2.0 * oa.left_mult_matrix(y) -
                                Eigen::MatrixXd::Identity(n, n);
      Eigen::FullPivLU<Eigen::MatrixXd> lu(J);
      if (!lu.isInvertible()) {
        ok = false;
        break;
      }
      const Eigen::VectorXd delta = lu.solve(-F);
      if (!delta.allFinite() || delta.norm() > 1e3) {
        ok = false;
        break;
      }
      y += delta;
    }
    if (ok && y.allFinite() &&
        (oa.square(y) - y).norm() <= (oa.square(c) - c).norm()) {
      c = y;
    } else {
      polished = false;
    }
  }

  const Eigen::VectorXd c_orig = ortho.from_ortho * c;
  const double residual = algebra.norm(algebra.square(c_orig) - c_orig);
  if (residual <= cfg.tol_idem) {
    IdempotentRecord rec = certify_extremal(algebra, c_orig, cfg);
    rec.polished = polished;
    outcome.record = std::move(rec);
  } else {
    IdempotentRecord rec;
    rec.c = c_orig;
    rec.residual = residual;
    rec.f_at_c = eval_f(algebra, c_orig).value;
    rec.polished = false;
    outcome.record = std::move(rec);
  }
  return outcome;
}

IdempotentRecord certify_extremal(const MetrisedAlgebra& algebra,
                                  const Eigen::VectorXd& c,
                                  const SearchConfig& cfg) {
  const double cnorm = algebra.norm(c);
  if (!(cnorm > cfg.tol_idem))
    throw std::invalid_argument("certify_extremal: c must be nonzero");
  const double residual = algebra.norm(algebra.square(c) - c);
  if (residual > cfg.tol_idem)
    throw std::invalid_argument("certify_extremal: not an idempotent");

  const OrthonormalizedAlgebra ortho = orthonormalize(algebra);
  const MetrisedAlgebra& oa = ortho.algebra;
  const int n = oa.dim();
  const Eigen::VectorXd y = ortho.to_ortho * c;

  Eigen::MatrixXd L = oa.left_mult_matrix(y);
  L = ((L + L.transpose()) / 2.0).eval();

  IdempotentRecord rec;
  rec.c = c;
  rec.residual = residual;

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> full(L);
  int near_one = 0;
  for (int i = 0; i < n; ++i)
    if (std::abs(full.eigenvalues()[i] - 1.0) <= cfg.tol_eig) ++near_one;
  rec.eigenvalue_one_simple = (near_one == 1);

  rec.extremal = true;
  if (n > 1) {
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(y);
    const Eigen::MatrixXd Q = qr.householderQ();
    const Eigen::MatrixXd perp = Q.rightCols(n - 1);
    const Eigen::MatrixXd restricted =
        (perp.transpose() * L * perp + (perp.transpose() * L * perp).transpose()) /
        2.0;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(restricted);
    rec.spectrum_on_perp.assign(es.eigenvalues().data(),
                                es.eigenvalues().data() + n - 1);
    rec.extremal = es.eigenvalues().maxCoeff() <= 0.5 + cfg.tol_eig;

    // Independent route: the closed-form f-hessian restricted to c⊥ equals
    // 3(2 L_c − Id)/|c|³ there; the two spectra must tell the same story.
    const RayleighEval f = eval_f(algebra, c);
    const Eigen::MatrixXd h_restricted =
        (perp.transpose() * f.hessian * perp).eval();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> hes(
        ((h_restricted + h_restricted.transpose()) / 2.0).eval());
    const double mu_from_hessian =
        (hes.eigenvalues().maxCoeff() * cnorm * cnorm * cnorm / 3.0 + 1.0) / 2.0;
    if (std::abs(mu_from_hessian - es.eigenvalues().maxCoeff()) > 1e-6)
      throw std::runtime_error(
          "certify_extremal: spectral and hessian routes disagree");
    rec.f_at_c = f.value;
  } else {
    rec.f_at_c = eval_f(algebra, c).value;
  }
  return rec;
}

IdempotentSearchResult find_idempotents(const MetrisedAlgebra& algebra,
                                        const SearchConfig& cfg) {
  IdempotentSearchResult out;
  out.raw = maximize_on_sphere(algebra, cfg);
  for (const StationaryPoint& p : out.raw.points) {
    IdempotentOutcome o = stationary_to_idempotent(algebra, p, cfg);
    if (o.nil_square) {
      out.nil_squares.push_back(p);
      continue;
    }
    const IdempotentRecord& rec = *o.record;
    if (rec.residual > cfg.tol_idem) continue;
    bool duplicate = false;
    for (const IdempotentRecord& seen : out.idempotents)
      if (algebra.norm(seen.c - rec.c) <= cfg.dedup_radius) {
        duplicate = true;
        break;
      }
    if (!duplicate) out.idempotents.push_back(rec);
  }
  std::sort(out.idempotents.begin(), out.idempotents.end(),
            [](const IdempotentRecord& a, const IdempotentRecord& b) {
              if (a.f_at_c != b.f_at_c) return a.f_at_c > b.f_at_c;
              return lex_less(a.c, b.c);
            });
  return out;
}

OddnessGapReport demonstrate_oddness_gap(const MetrisedAlgebra& algebra,
                                         const SearchConfig& cfg) {
  if (algebra.is_zero())
    throw std::invalid_argument("oddness gap demo requires a nonzero algebra");
  const SearchResult sr = maximize_on_sphere(algebra, cfg);
  if (sr.points.empty())
    throw std::runtime_error("sphere search returned no stationary points");

  OddnessGapReport report;
  const StationaryPoint& top = sr.points.front();
  const StationaryPoint& bottom = sr.points.back();
  report.x_plus = top.x;
  report.x_minus = bottom.x;
  report.f_plus = top.f_value;
  report.f_minus = bottom.f_value;
  report.pair_distance = algebra.norm(report.x_minus + report.x_plus);
  report.top_pair_anticollinear = report.pair_distance <= cfg.dedup_radius;
  report.odd_symmetry_gap = std::abs(report.f_minus + report.f_plus);

  // Classify local maxima/minima by the f-hessian on the tangent space.
  const OrthonormalizedAlgebra ortho = orthonormalize(algebra);
  for (const StationaryPoint& p : sr.points) {
    const int n = algebra.dim();
    if (n == 1) {
      (p.f_value >= 0 ? report.maximizers : report.minimizers).push_back(p.x);
      continue;
    }
    const Eigen::VectorXd y = ortho.to_ortho * p.x;
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(y);
    const Eigen::MatrixXd perp =
        Eigen::MatrixXd(qr.householderQ()).rightCols(n - 1);
    const Eigen::MatrixXd h = eval_f(algebra, p.x).hessian;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(
        ((perp.transpose() * h * perp +
          (perp.transpose() * h * perp).transpose()) /
         2.0)
            .eval());
    const double scale = std::max(1.0, std::abs(p.f_value));
    if (es.eigenvalues().maxCoeff() <= 1e-7 * scale)
      report.maximizers.push_back(p.x);
    else if (es.eigenvalues().minCoeff() >= -1e-7 * scale)
      report.minimizers.push_back(p.x);
  }

  for (const Eigen::VectorXd& m : report.minimizers)
    if (algebra.norm(m + report.x_plus) <= cfg.dedup_radius) {
      report.anticollinear_pair_exists = true;
      break;
    }
  return report;
}

}  // namespace cubal
