#pragma once

#include <array>
#include <cstddef>
#include <vector>

namespace bbpg {

/// 5-point Gauss-Legendre rule on [-1,1]; exact for polynomials up to degree 9.
struct Gauss5 {
  static constexpr std::array<double, 5> nodes = {
      -0.9061798459386639928, -0.5384693101056830910, 0.0,
      0.5384693101056830910, 0.9061798459386639928};
  static constexpr std::array<double, 5> weights = {
      0.2369268850561890875, 0.4786286704993664680, 0.5688888888888888889,
      0.4786286704993664680, 0.2369268850561890875};
};

/// Integrates f over [a, b] with a single 5-point Gauss rule.
template <class F>
double gauss5(const F& f, double a, double b) {
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  double sum = 0.0;
  for (std::size_t i = 0; i < 5; ++i) {
    sum += Gauss5::weights[i] * f(mid + half * Gauss5::nodes[i]);
  }
  return half * sum;
}

/// Integrates f over [a, b], splitting at the given breakpoints that fall
/// strictly inside the interval. `breakpoints` must be sorted ascending.
template <class F>
double gauss5_split(const F& f, double a, double b,
                    const std::vector<double>& breakpoints) {
  double sum = 0.0;
  double left = a;
  for (double bp : breakpoints) {
    if (bp <= left) continue;
    if (bp >= b) break;
    sum += gauss5(f, left, bp);
    left = bp;
  }
  sum += gauss5(f, left, b);
  return sum;
}

/// 7-point degree-5 rule on the reference triangle, weights normalized to 1.
/// Multiply the weighted sum by the triangle area.
struct TriangleRule7 {
  // Barycentric coordinates (l1, l2, l3) and normalized weights.
  static constexpr int size = 7;
  static const std::array<std::array<double, 3>, 7>& points();
  static const std::array<double, 7>& weights();
};

}  // namespace bbpg
