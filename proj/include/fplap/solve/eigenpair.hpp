#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "fplap/barriers.hpp"
#include "fplap/common/errors.hpp"
#include "fplap/core/domain.hpp"
#include "fplap/core/field.hpp"
#include "fplap/op/evaluator.hpp"
#include "fplap/solve/steady.hpp"

namespace fplap {

struct EigenResult {
  double lambda1 = 0.0;
  Field eigenfield;  // peak value 1, zero outside the ball
  int iterations = 0;
  double residual = 0.0;
};

/// Principal eigenpair of the operator on B_radius(0) with zero exterior:
///   L psi = lambda1 * G(psi),  psi > 0 in the ball,  psi = 0 outside,
/// normalized to peak value 1.  G(psi) = psi^(p-1) on positive fields keeps
/// the relation (p-1)-homogeneous; for p = 2 it is the linear eigenproblem.
///
/// Minimizes the Rayleigh quotient <L psi, psi> / sum |psi|^p by projected
/// gradient descent (positivity clamp, peak renormalization) with
/// Barzilai-Borwein steps.  lambda1 is the quotient at the converged field.
inline EigenResult eigen_principal(const OperatorParams& params, const Grid& grid,
                                   const SolveConfig& cfg, double radius = 1.0,
                                   QuadratureConfig quad = {}) {
  params.validate();
  grid.validate();
  cfg.validate();
  if (!(radius > 0.0)) throw invalid_argument_error("ball radius must be positive");
  for (int a = 0; a < grid.dim; ++a) {
    if (grid.box_lo(a) > -2.0 * radius || grid.box_hi(a) < 2.0 * radius)
      throw invalid_argument_error("grid must cover the ball with margin >= its radius");
  }

  Evaluator ev(grid, params, quad);
  Point center(static_cast<std::size_t>(grid.dim), 0.0);
  DomainSpec ball = DomainSpec::ball(center, radius);
  std::vector<std::size_t> inside = ball.grid_nodes(grid);
  if (inside.empty()) throw invalid_argument_error("ball contains no grid nodes");

  Field psi(grid, ExteriorRule::zero());
  for (std::size_t k : inside) {
    Point x = grid.node(k);
    for (auto& c : x) c /= radius;
    psi[k] = cone_psi(x, params.s);
  }

  const double p = params.p;
  auto normalize_peak = [&] {
    double peak = 0.0;
    for (std::size_t k : inside) peak = std::max(peak, psi[k]);
    if (!(peak > 0.0)) throw sign_violation_error("eigen iterate collapsed to zero");
    for (std::size_t k : inside) psi[k] /= peak;
  };
  normalize_peak();

  double w_mass = ev.total_kernel_mass() * params.c_norm;
  double eta = 0.5 / w_mass;
  const double eta_min = 1e-4 / w_mass, eta_max = 16.0 / w_mass;

  std::vector<double> lpsi, grad(inside.size()), prev_grad, prev_psi(inside.size());
  double lambda = 0.0, res = 0.0;
  int it = 0;
  for (it = 1; it <= cfg.max_iters; ++it) {
    ev.eval_nodes(psi, inside, lpsi, cfg.threads);
    double num = 0.0, den = 0.0;
    for (std::size_t k = 0; k < inside.size(); ++k) {
      double v = psi[inside[k]];
      num += lpsi[k] * v;
      den += std::pow(std::abs(v), p);
    }
    lambda = num / den;
    res = 0.0;
    for (std::size_t k = 0; k < inside.size(); ++k) {
      double g = lpsi[k] - lambda * g_power(psi[inside[k]], p);
      grad[k] = g;
      res = std::max(res, std::abs(g));
    }
    if (res <= cfg.tol * std::abs(lambda)) break;

    if (!prev_grad.empty()) {
      double sy = 0.0, yy = 0.0;
      for (std::size_t k = 0; k < inside.size(); ++k) {
        double sk = psi[inside[k]] - prev_psi[k];
        double yk = grad[k] - prev_grad[k];
        sy += sk * yk;
        yy += yk * yk;
      }
      if (yy > 0.0 && sy > 0.0) eta = std::clamp(sy / yy, eta_min, eta_max);
    }
    prev_grad = grad;
    for (std::size_t k = 0; k < inside.size(); ++k) prev_psi[k] = psi[inside[k]];

    for (std::size_t k = 0; k < inside.size(); ++k) {
      double v = psi[inside[k]] - eta * cfg.damping * grad[k];
      psi[inside[k]] = std::max(v, 0.0);
    }
    normalize_peak();
  }
  if (res > cfg.tol * std::abs(lambda))
    throw non_convergence_error(cfg.max_iters, res);

  for (std::size_t k : inside) {
    if (!(psi[k] > 0.0))
      throw sign_violation_error("converged eigenfield is not positive inside the ball");
  }
  normalize_peak();

  EigenResult out;
  out.lambda1 = lambda;
  out.eigenfield = std::move(psi);
  out.iterations = it;
  out.residual = res;
  return out;
}

}  // namespace fplap
