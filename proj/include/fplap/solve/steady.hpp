#pragma once

#include <algorithm>
#include <cmath>
#include <utility>
#include <vector>

#include "fplap/common/errors.hpp"
#include "fplap/core/domain.hpp"
#include "fplap/core/field.hpp"
#include "fplap/core/nonlinearity.hpp"
#include "fplap/core/params.hpp"
#include "fplap/op/evaluator.hpp"

namespace fplap {

/// Steady-state problem  L u = f(u) on omega,  u = exterior data on the
/// complement (grid nodes outside omega and everything off the grid).
struct ProblemSpec {
  OperatorParams params;
  Grid grid;
  DomainSpec omega;
  Nonlinearity nl;
  ExteriorRule exterior;
  Field init;
  QuadratureConfig quad;

  void validate() const {
    params.validate();
    grid.validate();
    nl.validate_fields();
    exterior.validate(grid);
    // Exterior data must stay strictly below mu.
    auto [lo, hi] = exterior.far_values();
    if (!(lo < nl.mu && hi < nl.mu))
      throw invalid_argument_error("exterior data must stay below mu");
    if (exterior.kind() == ExteriorRule::Kind::constant && !(exterior.constant_value() < nl.mu))
      throw invalid_argument_error("exterior data must stay below mu");
    const Grid& g = init.grid();
    if (g.dim != grid.dim || g.h != grid.h || g.counts != grid.counts || g.origin != grid.origin)
      throw invalid_argument_error("init grid does not match problem grid");
    // The initial iterate must already carry the prescribed data on the
    // complement; the flow never updates those nodes.  A periodic rule has
    // no pointwise values inside the box, so it cannot prescribe complement
    // nodes at all.
    for (std::size_t i = 0; i < g.size(); ++i) {
      Point x = g.node(i);
      if (omega.contains(x)) continue;
      if (exterior.is_periodic())
        throw invalid_argument_error(
            "periodic exterior data cannot prescribe complement nodes; omega must cover the grid");
      if (init[i] != exterior.value(x, g))
        throw invalid_argument_error("init does not respect the exterior data on the complement");
    }
  }
};

struct SolveConfig {
  double dt = 0.0;  // 0 = derive from the stability bound
  double tol = 1e-6;
  int max_iters = 200000;
  double damping = 1.0;
  int threads = 1;

  void validate() const {
    if (!(tol > 0.0)) throw invalid_argument_error("tol must be positive");
    if (max_iters < 1) throw invalid_argument_error("max_iters must be >= 1");
    if (!(damping > 0.0 && damping <= 1.0)) throw invalid_argument_error("damping must be in (0,1]");
  }
};

struct SolveResult {
  Field u;
  std::vector<double> residual_history;
  std::vector<std::pair<int, double>> dt_trace;  // (iteration at which dt took effect, dt)
  int iterations = 0;
  double final_residual = 0.0;
  double dt_used = 0.0;
  double min_interior = 0.0;
  double max_interior = 0.0;
  /// Whether the recorded residuals are nonincreasing over the final stretch
  /// (from max(10, 3/4 of the run) on); a damped flow must end monotone.
  bool residual_tail_monotone = false;
};

namespace detail {

inline bool tail_monotone(const std::vector<double>& hist) {
  if (hist.size() < 2) return true;
  std::size_t start = std::max<std::size_t>(10, (hist.size() * 3) / 4);
  if (start >= hist.size()) start = hist.size() - 1;
  for (std::size_t k = start; k + 1 < hist.size(); ++k) {
    if (hist[k + 1] > hist[k] * (1.0 + 1e-9)) return false;
  }
  return true;
}

}  // namespace detail

/// Explicit relaxation flow u <- u + dt*damping*(f(u) - L u) on the interior
/// nodes, complement held fixed.  Fixed points are exactly the discrete
/// steady states; dt derives from the summed kernel mass and a sampled
/// Lipschitz bound on f, and is halved (with a restart) when the iterate
/// blows past 10*mu.  No clipping is applied: boundedness of the converged
/// field is measured afterwards, not imposed.
inline SolveResult solve_steady(const ProblemSpec& problem, const SolveConfig& cfg) {
  problem.validate();
  cfg.validate();
  const Grid& grid = problem.grid;
  Evaluator ev(grid, problem.params, problem.quad);

  std::vector<std::size_t> interior = problem.omega.grid_nodes(grid);
  if (interior.empty()) throw invalid_argument_error("omega contains no grid nodes");

  double mu = problem.nl.mu;
  double osc = std::max({mu, problem.init.max_value() - std::min(0.0, problem.init.min_value()),
                         problem.exterior.bound()});
  double lip = problem.nl.lipschitz_estimate(-0.1 * mu, 1.5 * osc);
  double slope = problem.params.p == 2.0
                     ? 1.0
                     : (problem.params.p - 1.0) * std::pow(std::max(osc, 1e-12), problem.params.p - 2.0);
  double lambda_max = 2.0 * ev.total_kernel_mass() * problem.params.c_norm * slope + lip;
  double dt = cfg.dt > 0.0 ? cfg.dt : 1.0 / lambda_max;
  if (dt * lambda_max > 2.0)
    throw invalid_argument_error("dt violates the stability bound for this problem");

  SolveResult result;
  result.dt_trace.emplace_back(0, dt);

  const int max_halvings = 8;
  Field u = problem.init;
  std::vector<double> lu;
  for (int attempt = 0;; ++attempt) {
    bool unstable = false;
    int it = 0;
    for (it = 1; it <= cfg.max_iters; ++it) {
      ev.eval_nodes(u, interior, lu, cfg.threads);
      double res = 0.0;
      for (std::size_t k = 0; k < interior.size(); ++k) {
        double r = problem.nl.f(u[interior[k]]) - lu[k];
        lu[k] = r;  // reuse as the update direction
        res = std::max(res, std::abs(r));
      }
      result.residual_history.push_back(res);
      if (res <= cfg.tol) {
        result.iterations = it;
        result.final_residual = res;
        result.u = std::move(u);
        result.dt_used = dt;
        double lo = result.u[interior[0]], hi = lo;
        for (std::size_t k : interior) {
          lo = std::min(lo, result.u[k]);
          hi = std::max(hi, result.u[k]);
        }
        result.min_interior = lo;
        result.max_interior = hi;
        result.residual_tail_monotone = detail::tail_monotone(result.residual_history);
        return result;
      }
      double step = dt * cfg.damping;
      double sup = 0.0;
      for (std::size_t k = 0; k < interior.size(); ++k) {
        double v = u[interior[k]] + step * lu[k];
        u[interior[k]] = v;
        sup = std::max(sup, std::abs(v));
      }
      if (sup > 10.0 * mu) {
        unstable = true;
        break;
      }
    }
    if (!unstable)
      throw non_convergence_error(cfg.max_iters, result.residual_history.back());
    if (attempt >= max_halvings) {
      double sup = 0.0;
      for (double v : u.values()) sup = std::max(sup, std::abs(v));
      throw instability_error(sup);
    }
    dt *= 0.5;
    result.dt_trace.emplace_back(static_cast<int>(result.residual_history.size()), dt);
    u = problem.init;  // restart from clean data with the safer step
  }
}

}  // namespace fplap
