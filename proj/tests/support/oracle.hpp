#pragma once

// Test-side oracles, independent of the library's quadrature path.

#include <cmath>
#include <functional>
#include <stdexcept>

namespace oracle {

/// Adaptive Simpson on [a,b] with absolute tolerance.
inline double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                               double tol, int depth = 40) {
  struct Impl {
    const std::function<double(double)>& f;
    static double simpson(double fa, double fm, double fb, double a, double b) {
      return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    }
    double recurse(double a, double b, double fa, double fm, double fb, double whole, double tol,
                   int depth) const {
      double m = 0.5 * (a + b);
      double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
      double flm = f(lm), frm = f(rm);
      double left = simpson(fa, flm, fm, a, m);
      double right = simpson(fm, frm, fb, m, b);
      if (depth <= 0 || std::abs(left + right - whole) <= 15.0 * tol)
        return left + right + (left + right - whole) / 15.0;
      return recurse(a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
             recurse(m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
    }
  } impl{f};
  if (!(b > a)) return 0.0;
  double m = 0.5 * (a + b);
  double fa = f(a), fm = f(m), fb = f(b);
  return impl.recurse(a, b, fa, fm, fb, Impl::simpson(fa, fm, fb, a, b), tol, depth);
}

/// Integral of f over [a,b] when f carries a square-root kink at the right
/// endpoint: the substitution r = b - t^2 makes the integrand smooth.
inline double integrate_sqrt_right(const std::function<double(double)>& f, double a, double b,
                                   double tol) {
  if (!(b > a)) return 0.0;
  auto g = [&](double t) { return f(b - t * t) * 2.0 * t; };
  return adaptive_simpson(g, 0.0, std::sqrt(b - a), tol);
}

/// Raw-kernel fractional Laplacian (p = 2, c_norm = 1) in 1D at a point x,
/// for a closed-form u supported in (-1, 1) with sqrt-type behavior at the
/// support edge:
///   P.V. integral of (u(x)-u(y)) / |x-y|^(1+2s) dy
///     = integral over r > 0 of [2u(x) - u(x+r) - u(x-r)] / r^(1+2s) dr.
/// Pieces split at the kink radii 1 -+ |x| where x +- r crosses the support
/// edge, each integrated with the edge-flattening substitution; the [0, r0]
/// head uses the Taylor limit and the far tail is exact.
inline double frac_laplacian_1d(const std::function<double(double)>& u,
                                const std::function<double(double)>& u_second, double x, double s,
                                double tol = 1e-10) {
  if (!(s > 0.0 && s < 1.0)) throw std::invalid_argument("need s in (0,1)");
  auto integrand = [&](double r) {
    return (2.0 * u(x) - u(x + r) - u(x - r)) / std::pow(r, 1.0 + 2.0 * s);
  };
  double r0 = 1e-7;
  double head = -u_second(x) * std::pow(r0, 2.0 - 2.0 * s) / (2.0 - 2.0 * s);
  double k1 = 1.0 - std::abs(x), k2 = 1.0 + std::abs(x);
  double mid = integrate_sqrt_right(integrand, r0, k1, tol);
  double outer = integrate_sqrt_right(integrand, k1, k2, tol);
  double tail = 2.0 * u(x) * std::pow(k2, -2.0 * s) / (2.0 * s);
  return head + mid + outer + tail;
}

}  // namespace oracle
