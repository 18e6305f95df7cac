#include "bbpg/time_ops.hpp"

#include "bbpg/quadrature.hpp"

namespace bbpg {

TimeCoefficient TimeCoefficient::from_piecewise_linear(
    const PiecewiseLinear& pl) {
  std::vector<double> inner(pl.t.begin() + 1, pl.t.end() - 1);
  return TimeCoefficient{[pl](double t) { return pl(t); }, std::move(inner)};
}

TimeCoefficient TimeCoefficient::from_piecewise_constant(
    const PiecewiseConstant& pc) {
  return TimeCoefficient{[pc](double t) { return pc(t); }, pc.switches};
}

std::vector<double> project_Yk(const TimeCoefficient& f, const TimeGrid& grid) {
  std::vector<double> out(grid.intervals());
  for (int m = 0; m < grid.intervals(); ++m) {
    out[m] = gauss5_split(f.fn, grid.nodes[m], grid.nodes[m + 1], f.breakpoints) /
             grid.dt(m);
  }
  return out;
}

std::vector<double> interval_integrals(const TimeCoefficient& f,
                                       const TimeGrid& grid) {
  std::vector<double> out(grid.intervals());
  for (int m = 0; m < grid.intervals(); ++m) {
    out[m] = gauss5_split(f.fn, grid.nodes[m], grid.nodes[m + 1], f.breakpoints);
  }
  return out;
}

std::vector<double> hat_weights(const TimeCoefficient& f, const TimeGrid& grid) {
  const int steps = grid.intervals();
  std::vector<double> w(steps + 1, 0.0);

  const auto up = [&](int m) {  // ascending part on I_{m+1} = [t_m, t_{m+1}]
    const double a = grid.nodes[m];
    const double b = grid.nodes[m + 1];
    const double k = b - a;
    return gauss5_split([&](double t) { return f.fn(t) * (t - a) / k; }, a, b,
                        f.breakpoints);
  };
  const auto down = [&](int m) {  // descending part on I_{m+1}
    const double a = grid.nodes[m];
    const double b = grid.nodes[m + 1];
    const double k = b - a;
    return gauss5_split([&](double t) { return f.fn(t) * (b - t) / k; }, a, b,
                        f.breakpoints);
  };

  w[0] = down(0);
  for (int m = 1; m < steps; ++m) {
    w[m] = up(m - 1) + down(m);
  }
  w[steps] = up(steps - 1);
  return w;
}

}  // namespace bbpg
