#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "cubal/commands.hpp"

namespace {

void add_search_flags(CLI::App* cmd, cubal::SearchConfig& cfg) {
  cmd->add_option("--restarts", cfg.restarts, "Number of seeded restarts");
  cmd->add_option("--seed", cfg.seed, "Base seed for the restart streams");
  cmd->add_option("--max-iters", cfg.max_iters, "Iteration cap per restart");
  cmd->add_option("--tol-stat", cfg.tol_stat, "Stationarity residual tolerance");
  cmd->add_option("--tol-idem", cfg.tol_idem, "Idempotency residual tolerance");
  cmd->add_option("--tol-eig", cfg.tol_eig, "Eigenvalue clustering tolerance");
  cmd->add_option("--dedup-radius", cfg.dedup_radius,
                  "Distance below which stationary points are merged");
}

int emit(const cubal::RunReport& report) {
  std::cout << report.text();
  return report.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "cubal: idempotents, Peirce spectra and decompositions of commutative "
      "metrised algebras defined by cubic forms"};
  app.require_subcommand(1);

  std::string input_path;
  cubal::SearchConfig cfg;
  std::string c_flag;
  std::string x_flag;
  cubal::FdCheckOptions fd_opts;
  cubal::GenerateOptions gen_opts;

  CLI::App* check = app.add_subcommand("check", "Structural and derivative checks");
  check->add_option("input", input_path, "Algebra file")->required();

  CLI::App* idem = app.add_subcommand(
      "idempotents", "Enumerate idempotents by the sphere search");
  idem->add_option("input", input_path, "Algebra file")->required();
  add_search_flags(idem, cfg);

  CLI::App* peirce = app.add_subcommand(
      "peirce", "Peirce spectrum of an idempotent");
  peirce->add_option("input", input_path, "Algebra file")->required();
  peirce->add_option("--c", c_flag, "Idempotent, comma-separated")->required();
  add_search_flags(peirce, cfg);

  CLI::App* decompose = app.add_subcommand(
      "decompose", "Decide decomposability of an idempotent");
  decompose->add_option("input", input_path, "Algebra file")->required();
  decompose->add_option("--c", c_flag, "Idempotent, comma-separated")->required();
  add_search_flags(decompose, cfg);

  CLI::App* fd = app.add_subcommand(
      "fd-check", "Verify derivatives against finite differences");
  fd->add_option("input", input_path, "Algebra file")->required();
  fd->add_option("--x", x_flag, "Evaluation point, comma-separated");
  fd->add_option("--step", fd_opts.h, "Finite-difference step");
  fd->add_option("--seed", fd_opts.seed, "Seed for the default random point");

  CLI::App* gap = app.add_subcommand(
      "gap-demo", "Maximizer/minimizer pair of f and its anti-collinearity");
  gap->add_option("input", input_path, "Algebra file")->required();
  add_search_flags(gap, cfg);

  CLI::App* generate = app.add_subcommand(
      "generate", "Emit an algebra file for a built-in family");
  generate->add_option("family", gen_opts.family,
                       "counterexample | hadamard | random")
      ->required();
  generate->add_option("--n", gen_opts.n, "Dimension")->required();
  std::string a_flag;
  generate->add_option("--a", a_flag,
                       "Counterexample coefficients a_2..a_n, comma-separated");
  generate->add_option("--seed", gen_opts.seed, "Seed for the random family");
  generate->add_option("--scale", gen_opts.scale,
                       "Entry scale for the random family");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? cubal::kExitOk : cubal::kExitInputError;
  }

  try {
    if (check->parsed()) return emit(cubal::cmd_check(input_path));
    if (idem->parsed()) return emit(cubal::cmd_idempotents(input_path, cfg));
    if (peirce->parsed())
      return emit(cubal::cmd_peirce(input_path,
                                    cubal::parse_vector_csv(c_flag), cfg));
    if (decompose->parsed())
      return emit(cubal::cmd_decompose(input_path,
                                       cubal::parse_vector_csv(c_flag), cfg));
    if (fd->parsed()) {
      if (!x_flag.empty()) fd_opts.at = cubal::parse_vector_csv(x_flag);
      return emit(cubal::cmd_fd_check(input_path, fd_opts));
    }
    if (gap->parsed()) return emit(cubal::cmd_gap_demo(input_path, cfg));
    if (generate->parsed()) {
      if (!a_flag.empty()) {
        const Eigen::VectorXd a = cubal::parse_vector_csv(a_flag);
        gen_opts.a.assign(a.data(), a.data() + a.size());
      }
      std::cout << cubal::cmd_generate(gen_opts);
      return cubal::kExitOk;
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return cubal::kExitInputError;
  } catch (const std::exception& e) {
    std::cerr << "internal failure: " << e.what() << "\n";
    return cubal::kExitInternalError;
  }
  return cubal::kExitInternalError;
}
