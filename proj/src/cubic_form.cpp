#include "cubal/cubic_form.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>

namespace cubal {

namespace {

std::array<int, 3> sorted(int i, int j, int k) {
  std::array<int, 3> idx{i, j, k};
  std::sort(idx.begin(), idx.end());
  return idx;
}

}  // namespace

CubicForm::CubicForm(int dim) : dim_(dim) {
  if (dim < 1) throw std::invalid_argument("cubic form dimension must be >= 1");
  coeffs_.assign(packed_size(dim), 0.0);
}

int CubicForm::packed_index(int i, int j, int k) const {
  const auto [a, b, c] = sorted(i, j, k);
  if (a < 0 || c >= dim_)
    throw std::out_of_range("cubic form index out of range");
  // lexicographic rank of (a,b,c) among triples a <= b <= c < n
  int idx = 0;
  for (int t = 0; t < a; ++t) {
    const int m = dim_ - t;
    idx += m * (m + 1) / 2;
  }
  for (int s = a; s < b; ++s) idx += dim_ - s;
  return idx + (c - b);
}

double CubicForm::coeff(int i, int j, int k) const {
  return coeffs_[packed_index(i, j, k)];
}

void CubicForm::set_coeff(int i, int j, int k, double value) {
  coeffs_[packed_index(i, j, k)] = value;
}

double CubicForm::evaluate(const Eigen::VectorXd& x) const {
  return static_cast<double>(evaluate_ld(x));
}

long double CubicForm::evaluate_ld(const Eigen::VectorXd& x) const {
  if (x.size() != dim_) throw std::invalid_argument("dimension mismatch");
  long double sum = 0.0L;
  int pos = 0;
  for (int a = 0; a < dim_; ++a)
    for (int b = a; b < dim_; ++b)
      for (int c = b; c < dim_; ++c, ++pos) {
        const double v = coeffs_[pos];
        if (v == 0.0) continue;
        // multiplicity = number of distinct permutations of (a,b,c)
        const int mult = (a == c) ? 1 : ((a == b || b == c) ? 3 : 6);
        sum += static_cast<long double>(v) * mult *
               static_cast<long double>(x[a]) * x[b] * x[c];
      }
  return sum / 6.0L;
}

double CubicForm::polarize(const Eigen::VectorXd& x, const Eigen::VectorXd& y,
                           const Eigen::VectorXd& z) const {
  if (x.size() != dim_ || y.size() != dim_ || z.size() != dim_)
    throw std::invalid_argument("dimension mismatch");
  long double sum = 0.0L;
  int pos = 0;
  for (int a = 0; a < dim_; ++a)
    for (int b = a; b < dim_; ++b)
      for (int c = b; c < dim_; ++c, ++pos) {
        const double v = coeffs_[pos];
        if (v == 0.0) continue;
        long double term;
        if (a == c) {
          term = static_cast<long double>(x[a]) * y[a] * z[a];
        } else if (a == b) {  // (a,a,c)
          term = static_cast<long double>(x[a]) * y[a] * z[c] +
                 static_cast<long double>(x[a]) * y[c] * z[a] +
                 static_cast<long double>(x[c]) * y[a] * z[a];
        } else if (b == c) {  // (a,b,b)
          term = static_cast<long double>(x[a]) * y[b] * z[b] +
                 static_cast<long double>(x[b]) * y[a] * z[b] +
                 static_cast<long double>(x[b]) * y[b] * z[a];
        } else {
          term = static_cast<long double>(x[a]) * y[b] * z[c] +
                 static_cast<long double>(x[a]) * y[c] * z[b] +
                 static_cast<long double>(x[b]) * y[a] * z[c] +
                 static_cast<long double>(x[b]) * y[c] * z[a] +
                 static_cast<long double>(x[c]) * y[a] * z[b] +
                 static_cast<long double>(x[c]) * y[b] * z[a];
        }
        sum += v * term;
      }
  return static_cast<double>(sum);
}

double CubicForm::max_abs_coeff() const {
  double m = 0.0;
  for (double v : coeffs_) m = std::max(m, std::abs(v));
  return m;
}

CubicForm scale(const CubicForm& u, double t) {
  CubicForm out(u.dim());
  int pos = 0;
  for (int a = 0; a < u.dim(); ++a)
    for (int b = a; b < u.dim(); ++b)
      for (int c = b; c < u.dim(); ++c, ++pos)
        out.set_coeff(a, b, c, t * u.packed()[pos]);
  return out;
}

}  // namespace cubal
