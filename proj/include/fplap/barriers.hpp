#pragma once

#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "fplap/common/errors.hpp"
#include "fplap/core/domain.hpp"
#include "fplap/core/field.hpp"

namespace fplap {

/// Closed-form comparison functions used by the verification suites.  All of
/// them vanish identically outside their support ball and are radially
/// nonincreasing from the center.
///
/// bump2: c * exp(1/(|x|^2 - 4)) on |x| < 2, normalized to 1 at the origin
///        (c = e^{1/4}); smooth with support radius 2.
/// bump1: e * exp(1/(|x|^2 - 1)) on |x| < 1; smooth with support radius 1.
/// cone:  (1 - |x|^2)_+^s; boundary growth like dist^s, not C^{1,1} at the
///        support edge.
enum class BarrierKind { bump2, bump1, cone };

inline double phi2(const Point& x) {
  double r2 = 0.0;
  for (double v : x) r2 += v * v;
  if (r2 >= 4.0) return 0.0;
  return std::exp(0.25) * std::exp(1.0 / (r2 - 4.0));
}

inline double phi1(const Point& x) {
  double r2 = 0.0;
  for (double v : x) r2 += v * v;
  if (r2 >= 1.0) return 0.0;
  return std::exp(1.0) * std::exp(1.0 / (r2 - 1.0));
}

inline double cone_psi(const Point& x, double s) {
  if (!(s > 0.0 && s < 1.0)) throw invalid_argument_error("cone_psi needs s in (0,1)");
  double r2 = 0.0;
  for (double v : x) r2 += v * v;
  if (r2 >= 1.0) return 0.0;
  return std::pow(1.0 - r2, s);
}

struct BarrierHandle {
  BarrierKind kind = BarrierKind::bump1;
  Point center;
  double scale = 1.0;      // support radius multiplier R
  double amplitude = 1.0;  // value at the center
  double s = 0.5;          // cone only

  double support_radius() const {
    return scale * (kind == BarrierKind::bump2 ? 2.0 : 1.0);
  }

  double operator()(const Point& x) const {
    Point z(x.size());
    for (std::size_t a = 0; a < x.size(); ++a)
      z[a] = (x[a] - (a < center.size() ? center[a] : 0.0)) / scale;
    switch (kind) {
      case BarrierKind::bump2: return amplitude * phi2(z);
      case BarrierKind::bump1: return amplitude * phi1(z);
      case BarrierKind::cone: return amplitude * cone_psi(z, s);
    }
    return 0.0;
  }
};

/// Samples amplitude * base((x - center)/R) onto grid nodes with zero
/// exterior; the scaled support must fit inside the grid box, otherwise the
/// closed-form tails of the operator would be wrong for it.
inline Field sample_barrier(const BarrierHandle& handle, const Grid& grid) {
  if (!(handle.scale > 0.0)) throw invalid_argument_error("barrier scale must be positive");
  if (handle.amplitude < 0.0) throw invalid_argument_error("barrier amplitude must be >= 0");
  double r = handle.support_radius();
  for (int a = 0; a < grid.dim; ++a) {
    double c = a < static_cast<int>(handle.center.size()) ? handle.center[static_cast<std::size_t>(a)] : 0.0;
    if (c - r < grid.box_lo(a) || c + r > grid.box_hi(a))
      throw invalid_argument_error("scaled barrier support does not fit inside the grid");
  }
  Field out(grid, ExteriorRule::zero());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = handle(grid.node(i));
  return out;
}

inline Field scaled(BarrierKind kind, const Point& center, double scale, double amplitude,
                    const Grid& grid, double s = 0.5) {
  return sample_barrier(BarrierHandle{kind, center, scale, amplitude, s}, grid);
}

/// Sub-solution u*chi_D + eps*psi with psi the cone barrier on the unit ball
/// at ball_center.  With eps = 0 this degenerates to the plain restriction
/// u*chi_D (an empty D then gives the zero field).
inline Field build_subsolution(const Field& u, const DomainSpec& D, double eps,
                               const Point& ball_center, double s) {
  const Grid& g = u.grid();
  Field out(g, ExteriorRule::zero());
  std::size_t in_d = 0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    Point x = g.node(i);
    if (D.contains(x)) {
      out[i] = u[i];
      ++in_d;
    }
  }
  if (eps == 0.0) return out;
  if (in_d == 0) throw invalid_argument_error("build_subsolution: D contains no grid nodes");
  BarrierHandle psi{BarrierKind::cone, ball_center, 1.0, 1.0, s};
  for (std::size_t i = 0; i < g.size(); ++i) out[i] += eps * psi(g.node(i));
  return out;
}

}  // namespace fplap
