#include "cubal/commands.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "cubal/algebra_io.hpp"
#include "cubal/calculus.hpp"
#include "cubal/models.hpp"
#include "cubal/peirce.hpp"
#include "cubal/rng.hpp"

namespace cubal {

namespace {

using nlohmann::ordered_json;

ordered_json to_json(const Eigen::VectorXd& v) {
  ordered_json arr = ordered_json::array();
  for (int i = 0; i < v.size(); ++i) arr.push_back(v[i]);
  return arr;
}

ordered_json checked(double value, double tol) {
  return ordered_json{{"value", value}, {"tol", tol}, {"pass", value <= tol}};
}

ordered_json config_echo(const SearchConfig& cfg) {
  return ordered_json{{"restarts", cfg.restarts},
                      {"seed", cfg.seed},
                      {"max_iters", cfg.max_iters},
                      {"tol_stat", cfg.tol_stat},
                      {"tol_idem", cfg.tol_idem},
                      {"tol_eig", cfg.tol_eig},
                      {"dedup_radius", cfg.dedup_radius}};
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot read file: " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

RunReport base_report(const std::string& command, const std::string& digest_str,
                      const ordered_json& config) {
  RunReport report;
  report.doc["command"] = command;
  report.doc["input_digest"] = digest_str;
  report.doc["config"] = config;
  report.doc["status"] = "ok";
  report.doc["message"] = "";
  report.doc["results"] = ordered_json::object();
  return report;
}

/// Shared scaffolding: read + parse the input, run the payload builder, map
/// exceptions onto the exit-code contract.
template <typename Fn>
RunReport run_command(const std::string& command, const std::string& input_path,
                      const ordered_json& config, Fn&& fn) {
  std::string digest_str;
  try {
    const std::string text = read_file(input_path);
    digest_str = digest(text);
    ParsedAlgebra parsed = parse_algebra_file(text);
    RunReport report = base_report(command, digest_str, config);
    fn(parsed, report);
    return report;
  } catch (const ParseError& e) {
    RunReport report = base_report(command, digest_str, config);
    report.doc["status"] = "error";
    report.doc["message"] = e.what();
    report.exit_code = kExitInputError;
    return report;
  } catch (const std::invalid_argument& e) {
    RunReport report = base_report(command, digest_str, config);
    report.doc["status"] = "error";
    report.doc["message"] = e.what();
    report.exit_code = kExitInputError;
    return report;
  } catch (const std::exception& e) {
    RunReport report = base_report(command, digest_str, config);
    report.doc["status"] = "error";
    report.doc["message"] = std::string("internal failure: ") + e.what();
    report.exit_code = kExitInternalError;
    return report;
  }
}

ordered_json idempotent_json(const IdempotentRecord& rec, const SearchConfig& cfg) {
  ordered_json out;
  out["c"] = to_json(rec.c);
  out["residual"] = checked(rec.residual, cfg.tol_idem);
  out["f_at_c"] = rec.f_at_c;
  out["extremal"] = rec.extremal;
  out["spectrum_on_perp"] = rec.spectrum_on_perp;
  out["eigenvalue_one_simple"] = rec.eigenvalue_one_simple;
  out["polished"] = rec.polished;
  return out;
}

ordered_json stationary_json(const StationaryPoint& p, const SearchConfig& cfg) {
  ordered_json out;
  out["x"] = to_json(p.x);
  out["lambda"] = p.lambda;
  out["f_value"] = p.f_value;
  out["residual"] = checked(p.residual, cfg.tol_stat);
  out["kind"] = p.kind == StationaryKind::kNilSquare ? "nil-square"
                                                     : "idempotent-generating";
  return out;
}

}  // namespace

RunReport cmd_check(const std::string& input_path) {
  return run_command(
      "check", input_path, ordered_json::object(),
      [&](ParsedAlgebra& parsed, RunReport& report) {
        const MetrisedAlgebra& algebra = parsed.algebra;
        const StructureReport sr = algebra.check_structure();

        ordered_json structure;
        structure["commutativity"] = checked(sr.commutativity, sr.tol);
        structure["associativity"] = checked(sr.associativity, sr.tol);
        structure["self_adjointness"] = checked(sr.self_adjointness, sr.tol);
        structure["pass"] = sr.pass();

        // Derivative identities probed at a few seeded points.
        double worst = 0.0;
        SplitMix64 gen = restart_stream(1, 0);
        FdReport fd;
        for (int s = 0; s < 3; ++s) {
          const Eigen::VectorXd x = random_unit_vector(gen, algebra.dim());
          fd = fd_check(algebra, x);
          worst = std::max(worst, fd.max_error());
        }
        const double fd_tol = 1e-6;
        ordered_json derivatives;
        derivatives["h"] = fd.h;
        derivatives["max_error"] = checked(worst, fd_tol);
        derivatives["pass"] = worst <= fd_tol;

        report.doc["results"]["structure"] = structure;
        report.doc["results"]["derivatives"] = derivatives;
        if (!sr.pass() || worst > fd_tol) {
          report.doc["status"] = "error";
          report.doc["message"] = "structure or derivative check failed";
          report.exit_code = kExitInputError;
        }
      });
}

RunReport cmd_idempotents(const std::string& input_path, const SearchConfig& cfg) {
  return run_command(
      "idempotents", input_path, config_echo(cfg),
      [&](ParsedAlgebra& parsed, RunReport& report) {
        const IdempotentSearchResult found =
            find_idempotents(parsed.algebra, cfg);
        ordered_json idems = ordered_json::array();
        for (const IdempotentRecord& rec : found.idempotents)
          idems.push_back(idempotent_json(rec, cfg));
        ordered_json nils = ordered_json::array();
        for (const StationaryPoint& p : found.nil_squares)
          nils.push_back(stationary_json(p, cfg));
        report.doc["results"]["note"] = found.raw.note;
        report.doc["results"]["idempotents"] = idems;
        report.doc["results"]["nil_squares"] = nils;
        report.doc["results"]["failed_restarts"] = found.raw.failed_restarts;
      });
}

RunReport cmd_peirce(const std::string& input_path, const Eigen::VectorXd& c,
                     const SearchConfig& cfg) {
  return run_command(
      "peirce", input_path, config_echo(cfg),
      [&](ParsedAlgebra& parsed, RunReport& report) {
        const std::vector<EigenCluster> clusters =
            peirce_spectrum(parsed.algebra, c, cfg.tol_idem, cfg.tol_eig);
        ordered_json eigenvalues = ordered_json::array();
        const EigenCluster* v1 = nullptr;
        for (const EigenCluster& cl : clusters) {
          eigenvalues.push_back(ordered_json{{"value", cl.value},
                                             {"multiplicity", cl.multiplicity}});
          if (v1 == nullptr ||
              std::abs(cl.value - 1.0) < std::abs(v1->value - 1.0))
            v1 = &cl;
        }
        const SubalgebraCheck closure =
            check_subalgebra(parsed.algebra, v1->basis);
        report.doc["results"]["c"] = to_json(c);
        report.doc["results"]["eigenvalues"] = eigenvalues;
        report.doc["results"]["dim_v1"] = v1->multiplicity;
        report.doc["results"]["v1_subalgebra"] =
            ordered_json{{"closed", closure.closed},
                         {"residual", checked(closure.max_residual, closure.tol)}};
      });
}

RunReport cmd_decompose(const std::string& input_path, const Eigen::VectorXd& c,
                        const SearchConfig& cfg) {
  return run_command(
      "decompose", input_path, config_echo(cfg),
      [&](ParsedAlgebra& parsed, RunReport& report) {
        const PeirceReport pr = decide_decomposable(parsed.algebra, c, cfg);
        ordered_json eigenvalues = ordered_json::array();
        for (const auto& [value, multiplicity] : pr.eigenvalues)
          eigenvalues.push_back(
              ordered_json{{"value", value}, {"multiplicity", multiplicity}});
        report.doc["results"]["c"] = to_json(c);
        report.doc["results"]["verdict"] = to_string(pr.verdict);
        report.doc["results"]["eigenvalues"] = eigenvalues;
        report.doc["results"]["dim_v1"] = pr.dim_v1;
        report.doc["results"]["v1_subalgebra"] = ordered_json{
            {"closed", pr.v1_is_subalgebra},
            {"residual", checked(pr.subalgebra_residual, kTolSub)}};
        if (pr.decomposition) {
          const Eigen::VectorXd& c1 = pr.decomposition->first;
          const Eigen::VectorXd& c2 = pr.decomposition->second;
          ordered_json dec;
          dec["c1"] = to_json(c1);
          dec["c2"] = to_json(c2);
          dec["sum_residual"] =
              checked(parsed.algebra.norm(c1 + c2 - c), cfg.tol_idem);
          dec["c1_residual"] = checked(pr.c1_residual, cfg.tol_idem);
          dec["c2_residual"] = checked(pr.c2_residual, cfg.tol_idem);
          dec["cross_residual"] = checked(pr.cross_residual, cfg.tol_idem);
          dec["reverify_residual"] = checked(pr.reverify_residual, cfg.tol_idem);
          report.doc["results"]["decomposition"] = dec;
        } else {
          report.doc["results"]["decomposition"] = nullptr;
        }
        report.doc["results"]["diagnostic"] = pr.diagnostic;
        if (pr.verdict == DecompositionVerdict::kInconclusive) {
          report.doc["status"] = "inconclusive";
          report.doc["message"] = pr.diagnostic;
          report.exit_code = kExitInconclusive;
        }
      });
}

RunReport cmd_fd_check(const std::string& input_path, const FdCheckOptions& opts) {
  ordered_json config{{"h", opts.h}, {"seed", opts.seed}};
  return run_command(
      "fd-check", input_path, config,
      [&](ParsedAlgebra& parsed, RunReport& report) {
        Eigen::VectorXd x;
        if (opts.at) {
          x = *opts.at;
        } else {
          SplitMix64 gen = restart_stream(opts.seed, 0);
          x = random_unit_vector(gen, parsed.algebra.dim());
        }
        const FdReport fd = fd_check(parsed.algebra, x, opts.h);
        const double tol = 1e-6;
        report.doc["results"]["x"] = to_json(x);
        report.doc["results"]["h"] = fd.h;
        report.doc["results"]["grad_u_error"] = checked(fd.grad_u_error, tol);
        report.doc["results"]["hess_u_error"] = checked(fd.hess_u_error, tol);
        report.doc["results"]["f_grad_error"] = checked(fd.f_grad_error, tol);
        report.doc["results"]["f_hess_error"] = checked(fd.f_hess_error, tol);
        if (fd.max_error() > tol) {
          report.doc["status"] = "error";
          report.doc["message"] = "finite-difference check failed";
          report.exit_code = kExitInputError;
        }
      });
}

RunReport cmd_gap_demo(const std::string& input_path, const SearchConfig& cfg) {
  return run_command(
      "gap-demo", input_path, config_echo(cfg),
      [&](ParsedAlgebra& parsed, RunReport& report) {
        const OddnessGapReport gap = demonstrate_oddness_gap(parsed.algebra, cfg);
        ordered_json& res = report.doc["results"];
        res["x_plus"] = to_json(gap.x_plus);
        res["x_minus"] = to_json(gap.x_minus);
        res["f_plus"] = gap.f_plus;
        res["f_minus"] = gap.f_minus;
        res["pair_distance"] = checked(gap.pair_distance, cfg.dedup_radius);
        res["top_pair_anticollinear"] = gap.top_pair_anticollinear;
        res["odd_symmetry_gap"] = checked(gap.odd_symmetry_gap, 1e-10);
        res["anticollinear_pair_exists"] = gap.anticollinear_pair_exists;
        ordered_json maxs = ordered_json::array();
        for (const auto& m : gap.maximizers) maxs.push_back(to_json(m));
        ordered_json mins = ordered_json::array();
        for (const auto& m : gap.minimizers) mins.push_back(to_json(m));
        res["maximizers"] = maxs;
        res["minimizers"] = mins;
      });
}

std::string cmd_generate(const GenerateOptions& opts) {
  if (opts.family == "counterexample") {
    CounterexampleParams params;
    if (opts.a.empty()) {
      params = CounterexampleParams::with_defaults(opts.n);
    } else {
      params.n = opts.n;
      params.a = opts.a;
    }
    return emit_algebra_file(counterexample_cubic(params),
                             BilinearForm::identity(params.n));
  }
  if (opts.family == "hadamard")
    return emit_algebra_file(hadamard_cubic(opts.n),
                             BilinearForm::identity(opts.n));
  if (opts.family == "random")
    return emit_algebra_file(random_cubic(opts.n, opts.seed, opts.scale),
                             BilinearForm::identity(opts.n));
  throw std::invalid_argument("unknown family '" + opts.family +
                              "' (expected counterexample|hadamard|random)");
}

Eigen::VectorXd parse_vector_csv(const std::string& text) {
  std::vector<double> values;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t comma = text.find(',', pos);
    const std::string token =
        text.substr(pos, comma == std::string::npos ? std::string::npos
                                                    : comma - pos);
    char* end = nullptr;
    const double v = std::strtod(token.c_str(), &end);
    if (end == token.c_str() || *end != '\0')
      throw std::invalid_argument("cannot parse vector component '" + token +
                                  "'");
    values.push_back(v);
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  if (values.empty()) throw std::invalid_argument("empty vector");
  return Eigen::Map<Eigen::VectorXd>(values.data(),
                                     static_cast<int>(values.size()));
}

}  // namespace cubal
