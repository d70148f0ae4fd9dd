#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "fplap/common/errors.hpp"
#include "fplap/core/grid.hpp"

namespace fplap {

/// Prescribes the field on all of R^n outside the grid box.  The operator is
/// nonlocal, so this is part of the data, not a boundary condition.  Every
/// kind is eventually constant in each direction, which is what makes the
/// far-field tail of the singular integral expressible in closed form; a
/// generic prescribed function must declare its limits for the same reason.
class ExteriorRule {
 public:
  enum class Kind { zero, constant, axis_step, periodic_tangential, prescribed };

  ExteriorRule() = default;

  static ExteriorRule zero() { return ExteriorRule{}; }

  static ExteriorRule constant(double c) {
    ExteriorRule r;
    r.kind_ = Kind::constant;
    r.const_ = c;
    return r;
  }

  /// below where x[axis] < threshold, above elsewhere.
  static ExteriorRule axis_step(int axis, double threshold, double below, double above) {
    ExteriorRule r;
    r.kind_ = Kind::axis_step;
    r.axis_ = axis;
    r.threshold_ = threshold;
    r.below_ = below;
    r.above_ = above;
    return r;
  }

  /// Strip problems: wrap every axis but the last back into the grid box,
  /// take below/above when the last coordinate leaves the box vertically.
  static ExteriorRule periodic_tangential(double below, double above) {
    ExteriorRule r;
    r.kind_ = Kind::periodic_tangential;
    r.below_ = below;
    r.above_ = above;
    return r;
  }

  /// Closed-form exterior data.  far_below/far_above are the limits in the
  /// lower/upper far field along the last axis; they feed the analytic tail.
  static ExteriorRule prescribed(std::function<double(const Point&)> g, double far_below,
                                 double far_above, std::string label = "custom") {
    ExteriorRule r;
    r.kind_ = Kind::prescribed;
    r.fn_ = std::move(g);
    r.below_ = far_below;
    r.above_ = far_above;
    r.label_ = std::move(label);
    return r;
  }

  Kind kind() const { return kind_; }
  int axis() const { return axis_; }
  double threshold() const { return threshold_; }
  double constant_value() const { return const_; }
  double below() const { return below_; }
  double above() const { return above_; }
  const std::string& label() const { return label_; }

  bool is_periodic() const { return kind_ == Kind::periodic_tangential; }

  /// Far-field constants (lower direction, upper direction) along the last
  /// axis; equal for isotropic rules.
  std::pair<double, double> far_values() const {
    switch (kind_) {
      case Kind::zero: return {0.0, 0.0};
      case Kind::constant: return {const_, const_};
      default: return {below_, above_};
    }
  }

  double bound() const {
    auto [lo, hi] = far_values();
    return std::max(std::abs(lo), std::abs(hi));
  }

  /// Pointwise value off the grid box.  Periodic rules only resolve the
  /// vertical directions here; tangential wrapping needs the stored field and
  /// is done by Field::value_at.
  double value(const Point& x, const Grid& g) const {
    switch (kind_) {
      case Kind::zero:
        return 0.0;
      case Kind::constant:
        return const_;
      case Kind::axis_step:
        return x[static_cast<std::size_t>(axis_)] < threshold_ ? below_ : above_;
      case Kind::periodic_tangential: {
        int last = g.dim - 1;
        double v = x[static_cast<std::size_t>(last)];
        if (v < g.box_lo(last)) return below_;
        if (v > g.box_hi(last)) return above_;
        throw invalid_argument_error("periodic rule: tangential wrap must go through Field");
      }
      case Kind::prescribed:
        return fn_(x);
    }
    return 0.0;
  }

  std::string serialize() const;
  static ExteriorRule deserialize(const std::string& text);

  void validate(const Grid& g) const {
    if (kind_ == Kind::axis_step) {
      if (axis_ < 0 || axis_ >= g.dim) throw invalid_argument_error("axis_step axis out of range");
      if (threshold_ < g.box_lo(axis_) || threshold_ > g.box_hi(axis_))
        throw invalid_argument_error("axis_step threshold must lie inside the grid box");
    }
    if (kind_ == Kind::periodic_tangential && g.dim < 2)
      throw invalid_argument_error("periodic_tangential needs a tangential axis (dim >= 2)");
    if (kind_ == Kind::prescribed && !fn_)
      throw invalid_argument_error("prescribed rule needs a function");
  }

 private:
  Kind kind_ = Kind::zero;
  double const_ = 0.0;
  int axis_ = 0;
  double threshold_ = 0.0;
  double below_ = 0.0;
  double above_ = 0.0;
  std::function<double(const Point&)> fn_;
  std::string label_ = "custom";
};

}  // namespace fplap

#include "fplap/core/format.hpp"

namespace fplap {

inline std::string ExteriorRule::serialize() const {
  switch (kind_) {
    case Kind::zero:
      return "zero";
    case Kind::constant:
      return "constant " + format_double(const_);
    case Kind::axis_step:
      return "axis_step " + std::to_string(axis_) + " " + format_double(threshold_) + " " +
             format_double(below_) + " " + format_double(above_);
    case Kind::periodic_tangential:
      return "periodic " + format_double(below_) + " " + format_double(above_);
    case Kind::prescribed:
      return "prescribed " + label_ + " " + format_double(below_) + " " + format_double(above_);
  }
  return "zero";
}

inline ExteriorRule ExteriorRule::deserialize(const std::string& text) {
  std::vector<std::string> tok;
  std::string cur;
  for (char c : text) {
    if (c == ' ' || c == '\t') {
      if (!cur.empty()) tok.push_back(cur), cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  if (!cur.empty()) tok.push_back(cur);
  if (tok.empty()) throw invalid_argument_error("empty exterior rule");
  const std::string& k = tok[0];
  auto num = [&](std::size_t i) {
    bool ok = false;
    double v = parse_double(tok.at(i), &ok);
    if (!ok) throw invalid_argument_error("bad number in exterior rule: " + tok.at(i));
    return v;
  };
  if (k == "zero") return zero();
  if (k == "constant") return constant(num(1));
  if (k == "axis_step") return axis_step(static_cast<int>(num(1)), num(2), num(3), num(4));
  if (k == "periodic") return periodic_tangential(num(1), num(2));
  if (k == "prescribed")
    throw invalid_argument_error("prescribed exterior rules cannot be reconstructed from text");
  throw invalid_argument_error("unknown exterior rule kind: " + k);
}

}  // namespace fplap
