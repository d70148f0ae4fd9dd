#pragma once

#include "fplap/common/errors.hpp"

namespace fplap {

enum class CellRule { midpoint, gauss4 };

/// Quadrature controls for the singular integral.
///   delta_split  radius of the near field whose antipodal pairs are summed
///                together first (principal-value treatment); default 1.0*h.
///   tail_radius  where the numeric cell sums stop and the closed-form tail
///                takes over; default 0 = automatic (in 1D the cell sums
///                always span the whole grid and tails start at the box
///                faces; in 2D the default disc covers the grid diameter).
///   cell_rule    per-cell kernel integral: exact antiderivative in 1D under
///                gauss4, 2x2 tensor Gauss in 2D, or plain midpoint.
struct QuadratureConfig {
  double delta_split = 0.0;
  double tail_radius = 0.0;
  CellRule cell_rule = CellRule::gauss4;

  double resolved_delta(double h) const { return delta_split > 0.0 ? delta_split : h; }

  void validate(double h) const {
    double d = resolved_delta(h);
    if (d < h) throw invalid_argument_error("delta_split must be at least one grid spacing");
    if (tail_radius > 0.0 && tail_radius < d)
      throw invalid_argument_error("tail_radius must be at least delta_split");
  }
};

}  // namespace fplap
