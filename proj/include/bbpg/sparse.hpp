#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace bbpg {

/// Plain CSR storage for the small symmetric systems assembled here.
struct CsrMatrix {
  std::int32_t n = 0;
  std::vector<std::int64_t> row_ptr;
  std::vector<std::int32_t> col;
  std::vector<double> val;

  void multiply(std::span<const double> x, std::span<double> y) const;
  std::vector<double> multiply(std::span<const double> x) const;
  std::vector<double> diagonal() const;

  /// Sum of entries in one row.
  double row_sum(std::int32_t row) const;

  /// ca*a + cb*b for two matrices with identical sparsity patterns.
  static CsrMatrix combine(const CsrMatrix& a, double ca, const CsrMatrix& b,
                           double cb);
};

double dot(std::span<const double> a, std::span<const double> b);

}  // namespace bbpg
