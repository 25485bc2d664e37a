#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "cubal/algebra.hpp"

namespace cubal {

struct SearchConfig {
  int restarts = 200;
  std::uint64_t seed = 1;
  int max_iters = 500;
  double tol_stat = 1e-10;
  double tol_idem = 1e-8;
  double tol_eig = 1e-6;
  double dedup_radius = 1e-5;

  void validate() const;  // throws std::invalid_argument
};

enum class StationaryKind { kNilSquare, kIdempotentGenerating };

/// Unit-norm solution of x² = λx with λ = ⟨x²,x⟩; at such points f(x) = λ.
struct StationaryPoint {
  Eigen::VectorXd x;
  double lambda = 0.0;
  double f_value = 0.0;
  double residual = 0.0;  // ‖x² − λx‖ in the form's norm
  StationaryKind kind = StationaryKind::kIdempotentGenerating;
  bool global_max_candidate = false;
};

struct SearchResult {
  std::vector<StationaryPoint> points;  // descending f, then lexicographic
  int failed_restarts = 0;
  std::string note;  // "u ≡ 0" when the algebra is zero
};

/// Multi-start solve of ⟨x,x²⟩ → max on the unit sphere of the form.
/// Each seeded restart runs ascent on f, ascent on −f and a stationarity
/// residual descent, each followed by a Newton polish of the Lagrange
/// system {x² − λx = 0, ⟨x,x⟩ = 1}. ±x are kept as distinct points.
/// Deterministic for fixed (algebra, cfg); restarts are independent.
SearchResult maximize_on_sphere(const MetrisedAlgebra& algebra,
                                const SearchConfig& cfg);

struct IdempotentRecord {
  Eigen::VectorXd c;
  double residual = 0.0;  // ‖c² − c‖
  double f_at_c = 0.0;
  bool extremal = false;
  std::vector<double> spectrum_on_perp;  // eigenvalues of L_c on c⊥, ascending
  bool eigenvalue_one_simple = false;
  bool polished = true;  // false when the Newton polish diverged
};

/// Either the nil-square verdict (x² = 0) or the idempotent c = x/⟨x²,x⟩.
struct IdempotentOutcome {
  bool nil_square = false;
  std::optional<IdempotentRecord> record;
};

IdempotentOutcome stationary_to_idempotent(const MetrisedAlgebra& algebra,
                                           const StationaryPoint& point,
                                           const SearchConfig& cfg = {});

/// Spectrum of L_c restricted to c⊥; extremal iff it stays ≤ 1/2 + tol_eig,
/// in which case the eigenvalue 1 of L_c is simple. The L_c route is
/// cross-checked against the closed-form f-hessian restricted to c⊥.
IdempotentRecord certify_extremal(const MetrisedAlgebra& algebra,
                                  const Eigen::VectorXd& c,
                                  const SearchConfig& cfg = {});

/// Full pipeline: search, scale stationary points to idempotents, certify,
/// dedup. Idempotents sorted by descending f-value then lexicographically.
struct IdempotentSearchResult {
  std::vector<IdempotentRecord> idempotents;
  std::vector<StationaryPoint> nil_squares;
  SearchResult raw;
};

IdempotentSearchResult find_idempotents(const MetrisedAlgebra& algebra,
                                        const SearchConfig& cfg);

/// Maximizer/minimizer pair of f on the sphere. Since f is odd, the two can
/// be anti-collinear and therefore linearly dependent; on the counterexample
/// family they always are, so a max/min pair cannot yield two independent
/// idempotents there.
struct OddnessGapReport {
  Eigen::VectorXd x_plus;   // best maximizer found
  Eigen::VectorXd x_minus;  // best minimizer found
  double f_plus = 0.0;
  double f_minus = 0.0;
  double pair_distance = 0.0;  // ‖x_minus + x_plus‖
  bool top_pair_anticollinear = false;
  double odd_symmetry_gap = 0.0;  // |f(x_minus) + f(x_plus)|
  bool anticollinear_pair_exists = false;
  std::vector<Eigen::VectorXd> maximizers;
  std::vector<Eigen::VectorXd> minimizers;
};

OddnessGapReport demonstrate_oddness_gap(const MetrisedAlgebra& algebra,
                                         const SearchConfig& cfg);

}  // namespace cubal
