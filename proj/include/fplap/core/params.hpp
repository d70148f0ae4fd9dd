#pragma once

#include "fplap/common/errors.hpp"

namespace fplap {

/// Parameters of the nonlocal operator
///   L u(x) = c_norm * P.V. integral of G(u(x)-u(y)) / |x-y|^(n+s*p) dy,
/// with G(t) = |t|^(p-2) t.  Only n in {1,2}, s in (0,1) and p >= 2 are
/// supported; the kernel normalization defaults to 1 and can be overridden.
struct OperatorParams {
  int n = 1;
  double s = 0.5;
  double p = 2.0;
  double c_norm = 1.0;

  double sp() const { return s * p; }

  void validate() const {
    if (n != 1 && n != 2) throw invalid_argument_error("n must be 1 or 2");
    if (!(s > 0.0 && s < 1.0)) throw invalid_argument_error("s must lie in (0,1)");
    if (!(p >= 2.0)) throw invalid_argument_error("p must be >= 2");
    if (!(c_norm > 0.0)) throw invalid_argument_error("c_norm must be positive");
  }
};

}  // namespace fplap
