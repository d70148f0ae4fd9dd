#pragma once

#include <cmath>
#include <functional>
#include <limits>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "fplap/common/errors.hpp"
#include "fplap/core/grid.hpp"

namespace fplap {

/// Region of R^n given by a membership predicate plus a distance-to-boundary
/// function.  The built-in families cover the geometries the solvers and
/// verification suites need: graph epigraphs, half spaces, balls, strips and
/// the two perforated families whose complements fail the exterior cone
/// condition but still carry positive density in large dyadic annuli.
class DomainSpec {
 public:
  enum class Kind {
    epigraph,
    half_space,
    ball,
    strip,
    perforated_slabs,
    perforated_shells,
    everything,
    complement,
    custom
  };

  DomainSpec() : DomainSpec(everything()) {}

  static DomainSpec everything() {
    return DomainSpec(Kind::everything, [](const Point&) { return true; },
                      [](const Point&) { return std::numeric_limits<double>::infinity(); });
  }

  /// x[axis] > level.
  static DomainSpec half_space(int axis = 0, double level = 0.0) {
    return DomainSpec(
        Kind::half_space,
        [axis, level](const Point& x) { return x[static_cast<std::size_t>(axis)] > level; },
        [axis, level](const Point& x) { return std::abs(x[static_cast<std::size_t>(axis)] - level); });
  }

  /// x_n > phi(x'), with the vertical gap as the distance proxy.
  static DomainSpec epigraph(std::function<double(const Point&)> phi) {
    auto split = [](const Point& x) {
      Point tang(x.begin(), x.end() - 1);
      return std::make_pair(tang, x.back());
    };
    return DomainSpec(
        Kind::epigraph,
        [phi, split](const Point& x) {
          auto [tang, last] = split(x);
          return last > phi(tang);
        },
        [phi, split](const Point& x) {
          auto [tang, last] = split(x);
          return std::abs(last - phi(tang));
        });
  }

  static DomainSpec ball(Point center, double radius) {
    auto dist = [center](const Point& x) {
      double d2 = 0.0;
      for (std::size_t a = 0; a < center.size(); ++a) d2 += (x[a] - center[a]) * (x[a] - center[a]);
      return std::sqrt(d2);
    };
    return DomainSpec(
        Kind::ball, [dist, radius](const Point& x) { return dist(x) < radius; },
        [dist, radius](const Point& x) { return std::abs(radius - dist(x)); });
  }

  /// 0 < x_n < height.
  static DomainSpec strip(double height) {
    return DomainSpec(
        Kind::strip,
        [height](const Point& x) { return x.back() > 0.0 && x.back() < height; },
        [height](const Point& x) {
          double v = x.back();
          if (v <= 0.0) return -v;
          if (v >= height) return v - height;
          return std::min(v, height - v);
        });
  }

  /// Union of slabs 2i < x_n < 2i+1 over all integers i.
  static DomainSpec perforated_slabs() {
    return DomainSpec(
        Kind::perforated_slabs,
        [](const Point& x) { return unit_phase(x.back()) < 1.0 && !on_integer(x.back()); },
        [](const Point& x) { return integer_distance(x.back()); });
  }

  /// Union of shells 2i < |x| < 2i+1 over i = 0,1,2,...
  static DomainSpec perforated_shells() {
    auto radius = [](const Point& x) {
      double d2 = 0.0;
      for (double v : x) d2 += v * v;
      return std::sqrt(d2);
    };
    return DomainSpec(
        Kind::perforated_shells,
        [radius](const Point& x) {
          double r = radius(x);
          return unit_phase(r) < 1.0 && !on_integer(r);
        },
        [radius](const Point& x) { return integer_distance(radius(x)); });
  }

  static DomainSpec custom(std::function<bool(const Point&)> member,
                           std::function<double(const Point&)> boundary_distance) {
    if (!member || !boundary_distance)
      throw invalid_argument_error("custom domain needs both predicate and distance");
    return DomainSpec(Kind::custom, std::move(member), std::move(boundary_distance));
  }

  static DomainSpec complement_of(const DomainSpec& d) {
    auto m = d.member_;
    return DomainSpec(Kind::complement, [m](const Point& x) { return !m(x); }, d.bdist_);
  }

  Kind kind() const { return kind_; }
  bool contains(const Point& x) const { return member_(x); }
  double boundary_distance(const Point& x) const { return bdist_(x); }

  /// Flat indices of grid nodes inside the region, in node order.
  std::vector<std::size_t> grid_nodes(const Grid& g) const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < g.size(); ++i) {
      if (member_(g.node(i))) out.push_back(i);
    }
    return out;
  }

 private:
  DomainSpec(Kind kind, std::function<bool(const Point&)> member,
             std::function<double(const Point&)> bdist)
      : kind_(kind), member_(std::move(member)), bdist_(std::move(bdist)) {}

  // Position of t within its period-2 cell: in (0,1) inside a slab/shell.
  static double unit_phase(double t) {
    double m = std::fmod(t, 2.0);
    if (m < 0) m += 2.0;
    return m;
  }
  static bool on_integer(double t) { return std::abs(t - std::round(t)) == 0.0; }
  static double integer_distance(double t) { return std::abs(t - std::round(t)); }

  Kind kind_;
  std::function<bool(const Point&)> member_;
  std::function<double(const Point&)> bdist_;
};

}  // namespace fplap
