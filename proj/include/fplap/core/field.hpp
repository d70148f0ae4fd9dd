#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "fplap/common/errors.hpp"
#include "fplap/core/exterior.hpp"
#include "fplap/core/grid.hpp"

namespace fplap {

/// Grid samples plus the exterior rule: together they define a function on
/// all of R^n.  Inside the grid box evaluation is piecewise multilinear
/// (exact at nodes, preserves pointwise bounds); outside it follows the rule.
class Field {
 public:
  Field() = default;

  Field(Grid grid, ExteriorRule rule, double fill = 0.0)
      : grid_(std::move(grid)), rule_(std::move(rule)), values_(grid_.size(), fill) {
    grid_.validate();
    rule_.validate(grid_);
  }

  Field(Grid grid, std::vector<double> values, ExteriorRule rule)
      : grid_(std::move(grid)), rule_(std::move(rule)), values_(std::move(values)) {
    grid_.validate();
    rule_.validate(grid_);
    if (values_.size() != grid_.size())
      throw invalid_argument_error("value count does not match the grid");
  }

  const Grid& grid() const { return grid_; }
  const ExteriorRule& rule() const { return rule_; }
  const std::vector<double>& values() const { return values_; }
  std::vector<double>& values() { return values_; }

  double operator[](std::size_t i) const { return values_[i]; }
  double& operator[](std::size_t i) { return values_[i]; }
  std::size_t size() const { return values_.size(); }

  bool all_finite() const {
    return std::all_of(values_.begin(), values_.end(), [](double v) { return std::isfinite(v); });
  }

  double max_value() const { return *std::max_element(values_.begin(), values_.end()); }
  double min_value() const { return *std::min_element(values_.begin(), values_.end()); }
  double sup_norm() const {
    double m = 0.0;
    for (double v : values_) m = std::max(m, std::abs(v));
    return m;
  }

  /// Node value at integer offsets that may leave the grid; periodic rules
  /// wrap tangentially by whole periods so no interpolation enters.
  double node_or_exterior(int i0, int i1 = 0) const {
    if (rule_.is_periodic()) {
      int n0 = grid_.counts[0];
      i0 = ((i0 % n0) + n0) % n0;
      if (i1 < 0) return rule_.below();
      if (i1 >= grid_.counts[1]) return rule_.above();
      return values_[grid_.flat(i0, i1)];
    }
    bool inside = i0 >= 0 && i0 < grid_.counts[0] &&
                  (grid_.dim == 1 || (i1 >= 0 && i1 < grid_.counts[1]));
    if (inside) return values_[grid_.flat(i0, i1)];
    Point x(static_cast<std::size_t>(grid_.dim));
    x[0] = grid_.origin[0] + grid_.h * i0;
    if (grid_.dim == 2) x[1] = grid_.origin[1] + grid_.h * i1;
    return rule_.value(x, grid_);
  }

  /// Total evaluation at an arbitrary point.
  double value_at(Point x) const {
    if (x.size() != static_cast<std::size_t>(grid_.dim))
      throw invalid_argument_error("point dimension does not match the grid");
    if (rule_.is_periodic()) {
      for (int a = 0; a < grid_.dim - 1; ++a) {
        double lo = grid_.box_lo(a), period = grid_.extent(a);
        double t = std::fmod(x[static_cast<std::size_t>(a)] - lo, period);
        if (t < 0) t += period;
        x[static_cast<std::size_t>(a)] = lo + t;
      }
      int last = grid_.dim - 1;
      if (x[static_cast<std::size_t>(last)] < grid_.box_lo(last)) return rule_.below();
      if (x[static_cast<std::size_t>(last)] > grid_.box_hi(last)) return rule_.above();
      return interpolate(x);
    }
    if (!grid_.contains(x)) return rule_.value(x, grid_);
    return interpolate(x);
  }

 private:
  double interpolate(const Point& x) const {
    // Clamp into the node hull; the half-cell margin extends constantly.
    std::array<int, 2> base{0, 0};
    std::array<double, 2> frac{0.0, 0.0};
    for (int a = 0; a < grid_.dim; ++a) {
      double t = (x[static_cast<std::size_t>(a)] - grid_.origin[static_cast<std::size_t>(a)]) / grid_.h;
      int n = grid_.counts[static_cast<std::size_t>(a)];
      t = std::clamp(t, 0.0, static_cast<double>(n - 1));
      int i = std::min(static_cast<int>(t), n - 2);
      base[static_cast<std::size_t>(a)] = i;
      frac[static_cast<std::size_t>(a)] = t - i;
    }
    if (grid_.dim == 1) {
      double a = values_[grid_.flat(base[0])];
      double b = values_[grid_.flat(base[0] + 1)];
      return a + frac[0] * (b - a);
    }
    double v00 = values_[grid_.flat(base[0], base[1])];
    double v10 = values_[grid_.flat(base[0] + 1, base[1])];
    double v01 = values_[grid_.flat(base[0], base[1] + 1)];
    double v11 = values_[grid_.flat(base[0] + 1, base[1] + 1)];
    double lo = v00 + frac[0] * (v10 - v00);
    double hi = v01 + frac[0] * (v11 - v01);
    return lo + frac[1] * (hi - lo);
  }

  Grid grid_;
  ExteriorRule rule_;
  std::vector<double> values_;
};

}  // namespace fplap
