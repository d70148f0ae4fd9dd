#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <vector>

#include "fplap/common/errors.hpp"
#include "fplap/core/field.hpp"

namespace fplap {

struct SlideResult {
  Field w;                 // w_tau(x) = u(x) - u(x + tau*direction) on grid nodes
  double sup = 0.0;
  std::size_t arg_node = 0;  // first maximizer in node order
};

namespace detail {

/// tau * direction as whole grid cells, or throw when it is not one.
inline std::array<int, 2> slide_steps(const Grid& g, double tau, const Point& direction) {
  if (tau < 0.0) throw invalid_argument_error("tau must be >= 0");
  if (direction.size() != static_cast<std::size_t>(g.dim))
    throw invalid_argument_error("direction dimension does not match the grid");
  std::array<int, 2> steps{0, 0};
  for (int a = 0; a < g.dim; ++a) {
    double t = direction[static_cast<std::size_t>(a)] * tau / g.h;
    int m = static_cast<int>(std::lround(t));
    if (std::abs(t - m) > 1e-9 * std::max(1.0, std::abs(t)))
      throw invalid_argument_error("tau is not a grid-compatible shift along direction");
    steps[static_cast<std::size_t>(a)] = m;
  }
  return steps;
}

}  // namespace detail

/// Compares u with its translate along direction: exact node-shift algebra,
/// with the exterior rule supplying values where the shift leaves the grid.
/// Ties in the arg-sup break by node order.
inline SlideResult slide_compare(const Field& u, double tau, const Point& direction) {
  const Grid& g = u.grid();
  auto steps = detail::slide_steps(g, tau, direction);
  SlideResult out{Field(g, ExteriorRule::zero()), -std::numeric_limits<double>::infinity(), 0};
  for (int i1 = 0; i1 < (g.dim == 2 ? g.counts[1] : 1); ++i1) {
    for (int i0 = 0; i0 < g.counts[0]; ++i0) {
      std::size_t idx = g.flat(i0, i1);
      double w = u[idx] - u.node_or_exterior(i0 + steps[0], i1 + steps[1]);
      out.w[idx] = w;
      if (w > out.sup) {
        out.sup = w;
        out.arg_node = idx;
      }
    }
  }
  return out;
}

/// Discrete stand-in for the sliding infimum: the smallest grid-compatible
/// tau = m*h*|direction| with sup w_tau' <= tol for every admissible tau' in
/// [tau, tau_max].  Direction components must be whole numbers of cells.
inline double tau_zero_estimate(const Field& u, const Point& direction, double tau_max,
                                double tol) {
  const Grid& g = u.grid();
  if (direction.size() != static_cast<std::size_t>(g.dim))
    throw invalid_argument_error("direction dimension does not match the grid");
  double norm2 = 0.0;
  for (int a = 0; a < g.dim; ++a) {
    double c = direction[static_cast<std::size_t>(a)];
    if (std::abs(c - std::round(c)) > 1e-9)
      throw invalid_argument_error("direction must have integer cell components");
    norm2 += c * c;
  }
  if (!(norm2 > 0.0)) throw invalid_argument_error("direction must be nonzero");
  double base = g.h * std::sqrt(norm2);
  int m_max = static_cast<int>(std::floor(tau_max / base + 1e-9));
  if (m_max < 1) throw not_slidable_error(tau_max);

  int smallest = -1;
  for (int m = m_max; m >= 1; --m) {
    double sup = slide_compare(u, m * base, direction).sup;
    if (sup <= tol) {
      smallest = m;
    } else {
      break;
    }
  }
  if (smallest < 0) throw not_slidable_error(tau_max);
  return smallest * base;
}

}  // namespace fplap
