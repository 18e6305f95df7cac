#pragma once

namespace bbpg {

/// L1 / L2 / Linf triple used by all error-norm routines.
struct Norms3 {
  double l1 = 0.0;
  double l2 = 0.0;
  double linf = 0.0;
};

}  // namespace bbpg
