#pragma once

#include <cmath>

#include "fplap/common/errors.hpp"

namespace fplap {

/// G(t) = |t|^(p-2) t: odd, strictly increasing, (p-1)-homogeneous, and the
/// identity when p = 2.
inline double g_power(double t, double p) {
  if (p < 2.0) throw invalid_argument_error("g_power needs p >= 2");
  if (p == 2.0) return t;
  if (p == 3.0) return std::abs(t) * t;
  if (t == 0.0) return 0.0;
  return std::pow(std::abs(t), p - 2.0) * t;
}

namespace detail {

// Unchecked fast paths for the quadrature loops.
struct GIdentity {
  double operator()(double t) const { return t; }
};
struct GCubicish {
  double operator()(double t) const { return std::abs(t) * t; }
};
struct GGeneral {
  double pm2;
  double operator()(double t) const { return t == 0.0 ? 0.0 : std::pow(std::abs(t), pm2) * t; }
};

}  // namespace detail
}  // namespace fplap
