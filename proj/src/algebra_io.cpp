#include "cubal/algebra_io.hpp"

#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

namespace cubal {

namespace {

using nlohmann::json;

int require_index(const json& record, const char* key, int dim,
                  const char* what) {
  if (!record.contains(key) || !record[key].is_number_integer())
    throw ParseError(std::string(what) + " entry missing integer '" + key + "'");
  const int v = record[key].get<int>();
  if (v < 1 || v > dim) {
    std::ostringstream msg;
    msg << what << " index " << key << " = " << v << " outside 1.." << dim;
    throw ParseError(msg.str());
  }
  return v;
}

double require_value(const json& record, const char* what) {
  if (!record.contains("value") || !record["value"].is_number())
    throw ParseError(std::string(what) + " entry missing numeric 'value'");
  return record["value"].get<double>();
}

}  // namespace

ParsedAlgebra parse_algebra_file(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ParseError("algebra file must be a JSON object");

  for (const auto& [key, value] : doc.items()) {
    (void)value;
    if (key != "dim" && key != "cubic" && key != "product" && key != "gram")
      throw ParseError("unknown field '" + key + "'");
  }

  if (!doc.contains("dim") || !doc["dim"].is_number_integer())
    throw ParseError("missing integer field 'dim'");
  const int dim = doc["dim"].get<int>();
  if (dim < 1) throw ParseError("'dim' must be >= 1");

  const bool has_cubic = doc.contains("cubic");
  const bool has_product = doc.contains("product");
  if (has_cubic == has_product)
    throw ParseError("exactly one of 'cubic'/'product' is required");

  Eigen::MatrixXd gram = Eigen::MatrixXd::Identity(dim, dim);
  if (doc.contains("gram")) {
    const json& g = doc["gram"];
    if (!g.is_array() || static_cast<int>(g.size()) != dim * dim)
      throw ParseError("'gram' must be a row-major list of dim*dim reals");
    for (int r = 0; r < dim; ++r)
      for (int c = 0; c < dim; ++c) {
        const json& entry = g[r * dim + c];
        if (!entry.is_number()) throw ParseError("'gram' entries must be numbers");
        gram(r, c) = entry.get<double>();
      }
  }
  BilinearForm form = [&] {
    try {
      return BilinearForm(gram);
    } catch (const std::invalid_argument& e) {
      throw ParseError(e.what());
    }
  }();

  if (has_cubic) {
    const json& entries = doc["cubic"];
    if (!entries.is_array()) throw ParseError("'cubic' must be a list");
    CubicForm u(dim);
    std::set<std::tuple<int, int, int>> seen;
    for (const json& rec : entries) {
      if (!rec.is_object()) throw ParseError("cubic entry must be an object");
      const int i = require_index(rec, "i", dim, "cubic");
      const int j = require_index(rec, "j", dim, "cubic");
      const int k = require_index(rec, "k", dim, "cubic");
      if (!(i <= j && j <= k))
        throw ParseError("cubic entries require i <= j <= k");
      if (!seen.insert({i, j, k}).second) {
        std::ostringstream msg;
        msg << "duplicate cubic entry (" << i << "," << j << "," << k << ")";
        throw ParseError(msg.str());
      }
      u.set_coeff(i - 1, j - 1, k - 1, require_value(rec, "cubic"));
    }
    return ParsedAlgebra{algebra_from_cubic(u, form), std::move(u), false};
  }

  const json& entries = doc["product"];
  if (!entries.is_array()) throw ParseError("'product' must be a list");
  std::vector<Eigen::MatrixXd> product(dim, Eigen::MatrixXd::Zero(dim, dim));
  std::set<std::tuple<int, int, int>> seen;
  for (const json& rec : entries) {
    if (!rec.is_object()) throw ParseError("product entry must be an object");
    const int k = require_index(rec, "k", dim, "product");
    const int i = require_index(rec, "i", dim, "product");
    const int j = require_index(rec, "j", dim, "product");
    if (!seen.insert({k, std::min(i, j), std::max(i, j)}).second) {
      std::ostringstream msg;
      msg << "duplicate product entry (k=" << k << ", {i,j}={" << i << ","
          << j << "})";
      throw ParseError(msg.str());
    }
    const double value = require_value(rec, "product");
    product[k - 1](i - 1, j - 1) = value;
    product[k - 1](j - 1, i - 1) = value;
  }
  MetrisedAlgebra algebra(std::move(product), form);
  CubicForm cubic = cubic_from_algebra(algebra);
  return ParsedAlgebra{std::move(algebra), std::move(cubic), true};
}

ParsedAlgebra load_algebra_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot read file: " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_algebra_file(buffer.str());
}

std::string format_real(double value) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", value);
  return buf;
}

std::string emit_algebra_file(const CubicForm& cubic, const BilinearForm& form) {
  const int n = cubic.dim();
  if (form.dim() != n)
    throw std::invalid_argument("emit_algebra_file: dimension mismatch");

  std::ostringstream out;
  out << "{\n  \"dim\": " << n << ",\n  \"cubic\": [";
  bool first = true;
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j)
      for (int k = j; k < n; ++k) {
        const double v = cubic.coeff(i, j, k);
        if (v == 0.0) continue;
        out << (first ? "" : ",") << "\n    {\"i\": " << (i + 1)
            << ", \"j\": " << (j + 1) << ", \"k\": " << (k + 1)
            << ", \"value\": " << format_real(v) << "}";
        first = false;
      }
  out << (first ? "]" : "\n  ]");

  if (!form.is_identity(0.0)) {
    out << ",\n  \"gram\": [";
    for (int r = 0; r < n; ++r)
      for (int c = 0; c < n; ++c)
        out << ((r == 0 && c == 0) ? "" : ", ") << format_real(form.gram()(r, c));
    out << "]";
  }
  out << "\n}\n";
  return out.str();
}

std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t hash = 0xCBF29CE484222325ULL;
  for (unsigned char byte : bytes) {
    hash ^= byte;
    hash *= 0x100000001B3ULL;
  }
  return hash;
}

std::string digest(std::string_view bytes) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "fnv1a64:%016llx",
                static_cast<unsigned long long>(fnv1a64(bytes)));
  return buf;
}

}  // namespace cubal
