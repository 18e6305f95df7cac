#include "bbpg/sparse.hpp"

#include <cassert>

namespace bbpg {

void CsrMatrix::multiply(std::span<const double> x, std::span<double> y) const {
  assert(x.size() == static_cast<std::size_t>(n));
  assert(y.size() == static_cast<std::size_t>(n));
  for (std::int32_t i = 0; i < n; ++i) {
    double sum = 0.0;
    for (std::int64_t k = row_ptr[i]; k < row_ptr[i + 1]; ++k) {
      sum += val[k] * x[col[k]];
    }
    y[i] = sum;
  }
}

std::vector<double> CsrMatrix::multiply(std::span<const double> x) const {
  std::vector<double> y(n);
  multiply(x, y);
  return y;
}

std::vector<double> CsrMatrix::diagonal() const {
  std::vector<double> d(n, 0.0);
  for (std::int32_t i = 0; i < n; ++i) {
    for (std::int64_t k = row_ptr[i]; k < row_ptr[i + 1]; ++k) {
      if (col[k] == i) d[i] = val[k];
    }
  }
  return d;
}

double CsrMatrix::row_sum(std::int32_t row) const {
  double sum = 0.0;
  for (std::int64_t k = row_ptr[row]; k < row_ptr[row + 1]; ++k) sum += val[k];
  return sum;
}

CsrMatrix CsrMatrix::combine(const CsrMatrix& a, double ca, const CsrMatrix& b,
                             double cb) {
  assert(a.n == b.n && a.val.size() == b.val.size());
  CsrMatrix out = a;
  for (std::size_t k = 0; k < out.val.size(); ++k) {
    out.val[k] = ca * a.val[k] + cb * b.val[k];
  }
  return out;
}

double dot(std::span<const double> a, std::span<const double> b) {
  assert(a.size() == b.size());
  double sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) sum += a[i] * b[i];
  return sum;
}

}  // namespace bbpg
