#pragma once

#include <optional>
#include <string>

#include <Eigen/Dense>

#include <json.hpp>

#include "cubal/sphere_search.hpp"

namespace cubal {

/// Exit-code contract shared by every CLI verb.
inline constexpr int kExitOk = 0;
inline constexpr int kExitInconclusive = 1;
inline constexpr int kExitInputError = 2;
inline constexpr int kExitInternalError = 3;

/// One structured-text document per run: stable key order, command echo,
/// input digest, config echo, status {ok, inconclusive, error} and a
/// command-specific payload in which every checked value carries the
/// tolerance it was checked against.
struct RunReport {
  nlohmann::ordered_json doc;
  int exit_code = kExitOk;

  std::string text() const { return doc.dump(2) + "\n"; }
};

struct FdCheckOptions {
  std::optional<Eigen::VectorXd> at;  // default: seeded random unit vector
  double h = 1e-5;
  std::uint64_t seed = 1;
};

RunReport cmd_check(const std::string& input_path);
RunReport cmd_idempotents(const std::string& input_path, const SearchConfig& cfg);
RunReport cmd_peirce(const std::string& input_path, const Eigen::VectorXd& c,
                     const SearchConfig& cfg);
RunReport cmd_decompose(const std::string& input_path, const Eigen::VectorXd& c,
                        const SearchConfig& cfg);
RunReport cmd_fd_check(const std::string& input_path, const FdCheckOptions& opts);
RunReport cmd_gap_demo(const std::string& input_path, const SearchConfig& cfg);

/// `generate` prints an algebra file, not a run report.
struct GenerateOptions {
  std::string family;  // counterexample | hadamard | random
  int n = 2;
  std::vector<double> a;  // counterexample coefficients; defaults when empty
  std::uint64_t seed = 1;
  double scale = 1.0;
};

std::string cmd_generate(const GenerateOptions& opts);

/// Comma-separated reals, as accepted by the --c flag.
Eigen::VectorXd parse_vector_csv(const std::string& text);

}  // namespace cubal
