#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

#include "cubal/algebra.hpp"

namespace cubal {

/// Malformed or inconsistent algebra file (maps to CLI exit code 2).
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Parsed algebra document. Exactly one of "cubic"/"product" is present in
/// the file; `from_product` records which one it was.
struct ParsedAlgebra {
  MetrisedAlgebra algebra;
  CubicForm cubic;  // as given, or recovered from the product tensor
  bool from_product = false;
};

/// Algebra file format: a JSON document with
///   dim     positive integer
///   cubic   list of {"i","j","k","value"} with 1-based i <= j <= k,
///           giving the trilinear coefficients u(e_i,e_j,e_k)
///   product list of {"k","i","j","value"} giving P^k_ij (alternative to
///           cubic; i,j in either order, symmetrized)
///   gram    optional row-major list of dim*dim reals; identity if absent
ParsedAlgebra parse_algebra_file(const std::string& text);

ParsedAlgebra load_algebra_file(const std::string& path);

/// Canonical emission: stable field order, nonzero canonical entries sorted
/// by (i,j,k), reals with 17 significant digits, identity gram omitted.
/// parse(emit(...)) reproduces the inputs and re-emission is byte-identical.
std::string emit_algebra_file(const CubicForm& cubic, const BilinearForm& form);

/// Canonical real formatting used by the file emitter (%.17g).
std::string format_real(double value);

std::uint64_t fnv1a64(std::string_view bytes);

/// "fnv1a64:<16 hex digits>" digest used in run reports.
std::string digest(std::string_view bytes);

}  // namespace cubal
