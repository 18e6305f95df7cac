#include "bbpg/piecewise.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>

#include "bbpg/errors.hpp"

namespace bbpg {

PiecewiseLinear::PiecewiseLinear(std::vector<double> times,
                                 std::vector<double> values)
    : t(std::move(times)), v(std::move(values)) {
  if (t.size() < 2 || t.size() != v.size()) {
    throw DataError("PiecewiseLinear: need matching times/values, >= 2 nodes");
  }
  for (std::size_t i = 0; i + 1 < t.size(); ++i) {
    if (!(t[i] < t[i + 1])) {
      throw DataError("PiecewiseLinear: breakpoints must increase strictly");
    }
  }
}

PiecewiseLinear PiecewiseLinear::constant(double t0, double t1, double value) {
  return PiecewiseLinear({t0, t1}, {value, value});
}

double PiecewiseLinear::operator()(double time) const {
  if (time <= t.front()) return v.front();
  if (time >= t.back()) return v.back();
  const auto it = std::upper_bound(t.begin(), t.end(), time);
  const std::size_t i = static_cast<std::size_t>(it - t.begin()) - 1;
  const double theta = (time - t[i]) / (t[i + 1] - t[i]);
  return std::lerp(v[i], v[i + 1], theta);
}

double PiecewiseLinear::sup_abs() const {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

std::vector<double> merge_breakpoints(const std::vector<double>& a,
                                      const std::vector<double>& b) {
  std::vector<double> merged;
  merged.reserve(a.size() + b.size());
  std::merge(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(merged));
  merged.erase(std::unique(merged.begin(), merged.end()), merged.end());
  return merged;
}

double PiecewiseLinear::sup_abs_diff(const PiecewiseLinear& other) const {
  const std::vector<double> merged = merge_breakpoints(t, other.t);
  double m = 0.0;
  for (double time : merged) {
    m = std::max(m, std::abs((*this)(time) - other(time)));
  }
  return m;
}

PiecewiseLinear PiecewiseLinear::axpy(double scale,
                                      const PiecewiseLinear& other) const {
  std::vector<double> merged = merge_breakpoints(t, other.t);
  std::vector<double> values(merged.size());
  for (std::size_t i = 0; i < merged.size(); ++i) {
    values[i] = (*this)(merged[i]) + scale * other(merged[i]);
  }
  return PiecewiseLinear(std::move(merged), std::move(values));
}

PiecewiseLinear PiecewiseLinear::scaled(double factor) const {
  PiecewiseLinear out = *this;
  for (double& x : out.v) x *= factor;
  return out;
}

double PiecewiseLinear::inner(const PiecewiseLinear& other) const {
  assert(t.front() == other.t.front() && t.back() == other.t.back());
  const std::vector<double> merged = merge_breakpoints(t, other.t);
  double sum = 0.0;
  for (std::size_t i = 0; i + 1 < merged.size(); ++i) {
    const double a = merged[i];
    const double b = merged[i + 1];
    const double mid = 0.5 * (a + b);
    // Product of two linears is quadratic; Simpson is exact.
    sum += (b - a) / 6.0 *
           ((*this)(a)*other(a) + 4.0 * (*this)(mid)*other(mid) +
            (*this)(b)*other(b));
  }
  return sum;
}

double PiecewiseLinear::integral() const {
  double sum = 0.0;
  for (std::size_t i = 0; i + 1 < t.size(); ++i) {
    sum += 0.5 * (t[i + 1] - t[i]) * (v[i] + v[i + 1]);
  }
  return sum;
}

double PiecewiseConstant::operator()(double time) const {
  const auto it = std::upper_bound(switches.begin(), switches.end(), time);
  return values[static_cast<std::size_t>(it - switches.begin())];
}

}  // namespace bbpg
