#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <vector>

#include "fplap/common/errors.hpp"

namespace fplap {

using Point = std::vector<double>;

/// Uniform node-centered grid in 1 or 2 dimensions.  Node (i0,i1) sits at
/// origin + h*(i0,i1); the cell around it is the h-box centered there, so the
/// grid covers the box [origin - h/2, origin + (counts-1)*h + h/2] per axis.
/// r_trunc bounds the numeric integration range for exterior data that has no
/// closed-form tail; beyond it tails are integrated analytically.
struct Grid {
  int dim = 1;
  std::array<double, 2> origin{0.0, 0.0};
  double h = 1.0;
  std::array<int, 2> counts{3, 1};
  double r_trunc = 0.0;  // 0 = default (half the grid diameter)

  std::size_t size() const {
    return static_cast<std::size_t>(counts[0]) * (dim == 2 ? static_cast<std::size_t>(counts[1]) : 1u);
  }

  std::size_t flat(int i0, int i1 = 0) const {
    return static_cast<std::size_t>(i0) + static_cast<std::size_t>(counts[0]) * static_cast<std::size_t>(i1);
  }

  std::array<int, 2> unflat(std::size_t idx) const {
    int i0 = static_cast<int>(idx % static_cast<std::size_t>(counts[0]));
    int i1 = static_cast<int>(idx / static_cast<std::size_t>(counts[0]));
    return {i0, i1};
  }

  Point node(std::size_t idx) const {
    auto ij = unflat(idx);
    Point x(static_cast<std::size_t>(dim));
    x[0] = origin[0] + h * ij[0];
    if (dim == 2) x[1] = origin[1] + h * ij[1];
    return x;
  }

  double box_lo(int axis) const { return origin[static_cast<std::size_t>(axis)] - 0.5 * h; }
  double box_hi(int axis) const {
    return origin[static_cast<std::size_t>(axis)] + h * (counts[static_cast<std::size_t>(axis)] - 1) + 0.5 * h;
  }

  double extent(int axis) const { return h * counts[static_cast<std::size_t>(axis)]; }

  double diameter() const {
    if (dim == 1) return extent(0);
    return std::hypot(extent(0), extent(1));
  }

  double truncation_radius() const { return r_trunc > 0.0 ? r_trunc : 0.5 * diameter(); }

  bool contains(const Point& x) const {
    for (int a = 0; a < dim; ++a) {
      if (x[static_cast<std::size_t>(a)] < box_lo(a) || x[static_cast<std::size_t>(a)] > box_hi(a)) return false;
    }
    return true;
  }

  /// Index of the node whose position matches x, or npos when x is off the
  /// node lattice (beyond 1e-9*h) or outside the grid.
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);
  std::size_t node_index_of(const Point& x) const {
    if (x.size() != static_cast<std::size_t>(dim)) return npos;
    std::array<int, 2> ij{0, 0};
    for (int a = 0; a < dim; ++a) {
      double t = (x[static_cast<std::size_t>(a)] - origin[static_cast<std::size_t>(a)]) / h;
      int i = static_cast<int>(std::lround(t));
      if (std::abs(t - i) > 1e-9) return npos;
      if (i < 0 || i >= counts[static_cast<std::size_t>(a)]) return npos;
      ij[static_cast<std::size_t>(a)] = i;
    }
    return flat(ij[0], ij[1]);
  }

  void validate() const {
    if (dim != 1 && dim != 2) throw invalid_argument_error("grid dim must be 1 or 2");
    if (!(h > 0.0)) throw invalid_argument_error("grid spacing must be positive");
    for (int a = 0; a < dim; ++a) {
      if (counts[static_cast<std::size_t>(a)] < 3)
        throw invalid_argument_error("grid counts must be >= 3 per axis");
    }
    if (r_trunc > 0.0 && r_trunc < 0.5 * diameter())
      throw invalid_argument_error("r_trunc must be at least half the grid diameter");
  }
};

}  // namespace fplap
