#include "bbpg/quadrature.hpp"

#include <cmath>

namespace bbpg {

namespace {

struct Rule7 {
  std::array<std::array<double, 3>, 7> pts;
  std::array<double, 7> wts;

  Rule7() {
    const double s = std::sqrt(15.0);
    const double b1 = (6.0 + s) / 21.0;   // interior group near edge midpoints
    const double b2 = (6.0 - s) / 21.0;   // interior group near vertices
    const double w1 = (155.0 + s) / 1200.0;
    const double w2 = (155.0 - s) / 1200.0;

    pts[0] = {1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0};
    wts[0] = 9.0 / 40.0;
    pts[1] = {b1, b1, 1.0 - 2.0 * b1};
    pts[2] = {b1, 1.0 - 2.0 * b1, b1};
    pts[3] = {1.0 - 2.0 * b1, b1, b1};
    wts[1] = wts[2] = wts[3] = w1;
    pts[4] = {b2, b2, 1.0 - 2.0 * b2};
    pts[5] = {b2, 1.0 - 2.0 * b2, b2};
    pts[6] = {1.0 - 2.0 * b2, b2, b2};
    wts[4] = wts[5] = wts[6] = w2;
  }
};

const Rule7& rule7() {
  static const Rule7 r;
  return r;
}

}  // namespace

const std::array<std::array<double, 3>, 7>& TriangleRule7::points() {
  return rule7().pts;
}

const std::array<double, 7>& TriangleRule7::weights() {
  return rule7().wts;
}

}  // namespace bbpg
