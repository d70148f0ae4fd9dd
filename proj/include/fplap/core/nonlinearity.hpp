#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <string>
#include <utility>

#include "fplap/common/errors.hpp"

namespace fplap {

/// Reaction term f with the structure the steady-state theory needs:
///   (a) f > 0 on (0, mu) and f <= 0 beyond mu,
///   (b) f(t) >= delta0 * t on [0, t0],
///   (c) f nonincreasing on (t1, mu),
/// for some 0 < t0 < t1 < mu.  The conditions are checked by dense sampling,
/// not symbolically; see validate_nonlinearity.
struct Nonlinearity {
  double mu = 1.0;
  double t0 = 0.5;
  double t1 = 0.5;
  double delta0 = 0.5;
  std::function<double(double)> f;
  std::string name = "custom";

  double operator()(double t) const { return f(t); }

  void validate_fields() const {
    if (!f) throw invalid_argument_error("nonlinearity needs a function");
    if (!(0.0 < t0 && t0 < t1 && t1 < mu))
      throw invalid_argument_error("need 0 < t0 < t1 < mu");
    if (!(delta0 > 0.0)) throw invalid_argument_error("delta0 must be positive");
  }

  /// Sampled Lipschitz estimate of f over [lo, hi], used for step-size bounds.
  double lipschitz_estimate(double lo, double hi, int samples = 4096) const {
    double m = 0.0;
    double step = (hi - lo) / samples;
    double prev = f(lo);
    for (int k = 1; k <= samples; ++k) {
      double cur = f(lo + k * step);
      m = std::max(m, std::abs(cur - prev) / step);
      prev = cur;
    }
    return m;
  }
};

/// f(u) = u - u^3 with mu = 1.  t1 = 1/sqrt(3) is where f' changes sign;
/// on [0, 1/2] the ratio f(t)/t = 1 - t^2 stays >= 3/4.
inline Nonlinearity make_allen_cahn() {
  Nonlinearity nl;
  nl.mu = 1.0;
  nl.t0 = 0.5;
  nl.t1 = 1.0 / std::sqrt(3.0);
  nl.delta0 = 0.75;
  nl.f = [](double t) { return t - t * t * t; };
  nl.name = "allen_cahn";
  return nl;
}

/// f(u) = u - u^2 with mu = 1; f' = 1 - 2t <= 0 from t = 1/2 on, and
/// f(t)/t = 1 - t >= 3/4 on [0, 1/4].
inline Nonlinearity make_fisher_kpp() {
  Nonlinearity nl;
  nl.mu = 1.0;
  nl.t0 = 0.25;
  nl.t1 = 0.5;
  nl.delta0 = 0.75;
  nl.f = [](double t) { return t - t * t; };
  nl.name = "fisher_kpp";
  return nl;
}

/// Worst sampled margin per condition; a condition passes when its margin is
/// not meaningfully negative (tiny slack absorbs rounding in f itself).
struct NonlinearityReport {
  bool pass_a = false, pass_b = false, pass_c = false;
  double margin_a = 0.0, margin_b = 0.0, margin_c = 0.0;
  double worst_a = 0.0, worst_b = 0.0, worst_c = 0.0;  // sample achieving the margin

  bool all_pass() const { return pass_a && pass_b && pass_c; }
};

inline NonlinearityReport validate_nonlinearity(const Nonlinearity& nl, int samples = 10000) {
  nl.validate_fields();
  constexpr double slack = 1e-12;
  NonlinearityReport rep;

  // (a): f > 0 on the open interval (0, mu), f <= 0 sampled on [mu, 2 mu].
  double margin = std::numeric_limits<double>::infinity();
  double worst = 0.0;
  for (int k = 0; k < samples; ++k) {
    double t = nl.mu * (k + 0.5) / samples;
    double v = nl.f(t);
    if (v < margin) margin = v, worst = t;
  }
  for (int k = 0; k <= samples; ++k) {
    double t = nl.mu + nl.mu * static_cast<double>(k) / samples;
    double v = -nl.f(t);
    if (v < margin) margin = v, worst = t;
  }
  rep.margin_a = margin;
  rep.worst_a = worst;
  rep.pass_a = margin > -slack;

  // (b): f(t) - delta0 t >= 0 on [0, t0].
  margin = std::numeric_limits<double>::infinity();
  worst = 0.0;
  for (int k = 0; k <= samples; ++k) {
    double t = nl.t0 * static_cast<double>(k) / samples;
    double v = nl.f(t) - nl.delta0 * t;
    if (v < margin) margin = v, worst = t;
  }
  rep.margin_b = margin;
  rep.worst_b = worst;
  rep.pass_b = margin > -slack;

  // (c): consecutive differences f(t_k) - f(t_{k+1}) >= 0 on (t1, mu).
  margin = std::numeric_limits<double>::infinity();
  worst = 0.0;
  double prev_t = nl.t1, prev_v = nl.f(nl.t1);
  for (int k = 1; k <= samples; ++k) {
    double t = nl.t1 + (nl.mu - nl.t1) * static_cast<double>(k) / samples;
    double v = nl.f(t);
    double d = prev_v - v;
    if (d < margin) margin = d, worst = prev_t;
    prev_t = t, prev_v = v;
  }
  rep.margin_c = margin;
  rep.worst_c = worst;
  rep.pass_c = margin > -slack;

  return rep;
}

}  // namespace fplap
