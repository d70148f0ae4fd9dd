#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "fplap/common/rng.hpp"
#include "fplap/core/domain.hpp"
#include "fplap/core/field.hpp"
#include "fplap/op/evaluator.hpp"
#include "fplap/verify/report.hpp"

namespace fplap {

// ---------------------------------------------------------------------------
// Annulus density of a region: Monte-Carlo measure ratios over dyadic annuli.
// ---------------------------------------------------------------------------

struct DensityReport {
  std::vector<double> ratios;      // one per j in [j_lo, j_hi]
  std::vector<double> std_errors;  // binomial standard error per ratio
  double liminf_estimate = 0.0;    // min over the tail half of the j range
  double se_at_liminf = 0.0;
  int j_lo = 0, j_hi = 0;
};

/// Fraction of each annulus B_{2^{j+1} r}(x) \ B_{2^j r}(x) covered by sigma,
/// estimated from `samples` uniform draws per annulus.  The liminf estimate
/// is the minimum over the upper half of the j range.
inline DensityReport estimate_annulus_density(const DomainSpec& sigma, const Point& x, double r,
                                              int j_lo, int j_hi, int samples, Rng& rng) {
  if (samples < 10000)
    throw invalid_argument_error("need at least 10^4 samples per annulus");
  if (j_hi < j_lo) throw invalid_argument_error("empty j range");
  int dim = static_cast<int>(x.size());
  DensityReport rep;
  rep.j_lo = j_lo;
  rep.j_hi = j_hi;
  for (int j = j_lo; j <= j_hi; ++j) {
    double r1 = std::ldexp(r, j), r2 = std::ldexp(r, j + 1);
    long hits = 0;
    for (int k = 0; k < samples; ++k) {
      Point y = x;
      if (dim == 1) {
        double rad = r1 + (r2 - r1) * rng.uniform01();
        y[0] += rng.uniform01() < 0.5 ? -rad : rad;
      } else {
        double rad = std::sqrt(r1 * r1 + (r2 * r2 - r1 * r1) * rng.uniform01());
        double theta = 2.0 * std::numbers::pi * rng.uniform01();
        y[0] += rad * std::cos(theta);
        y[1] += rad * std::sin(theta);
      }
      if (sigma.contains(y)) ++hits;
    }
    double p = static_cast<double>(hits) / samples;
    rep.ratios.push_back(p);
    rep.std_errors.push_back(std::sqrt(std::max(p * (1.0 - p), 0.0) / samples));
  }
  std::size_t tail_begin = rep.ratios.size() / 2;
  rep.liminf_estimate = rep.ratios[tail_begin];
  rep.se_at_liminf = rep.std_errors[tail_begin];
  for (std::size_t k = tail_begin; k < rep.ratios.size(); ++k) {
    if (rep.ratios[k] < rep.liminf_estimate) {
      rep.liminf_estimate = rep.ratios[k];
      rep.se_at_liminf = rep.std_errors[k];
    }
  }
  return rep;
}

inline json density_to_json(const DensityReport& rep) {
  json j;
  j["j_lo"] = rep.j_lo;
  j["j_hi"] = rep.j_hi;
  j["ratios"] = rep.ratios;
  j["std_errors"] = rep.std_errors;
  j["liminf_estimate"] = rep.liminf_estimate;
  j["se_at_liminf"] = rep.se_at_liminf;
  return j;
}

// ---------------------------------------------------------------------------
// Maximum principle: L u + c u <= 0 on D and u <= 0 outside force u <= 0 on D.
// ---------------------------------------------------------------------------

inline SuiteReport check_max_principle(const Evaluator& ev, const Field& u, const Field& c_field,
                                       const DomainSpec& D, double tol,
                                       const DensityReport* density = nullptr) {
  SuiteReport rep;
  rep.suite = "max_principle";
  rep.hypotheses["tol"] = tol;
  if (density) rep.hypotheses["complement_density"] = density_to_json(*density);

  const Grid& g = ev.grid();
  auto inside = D.grid_nodes(g);
  rep.hypotheses["nodes_in_D"] = inside.size();
  if (inside.empty()) {
    rep.mark_vacuous("D contains no grid nodes");
    return rep;
  }

  double min_c = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < c_field.size(); ++i) min_c = std::min(min_c, c_field[i]);
  rep.hypotheses["min_c"] = min_c;
  if (min_c < 0.0) {
    rep.mark_vacuous("c(x) has negative values");
    return rep;
  }

  double outside_max = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (!D.contains(g.node(i))) outside_max = std::max(outside_max, u[i]);
  }
  auto [far_lo, far_hi] = u.rule().far_values();
  outside_max = std::max({outside_max, far_lo, far_hi});
  rep.hypotheses["max_u_outside_D"] = outside_max;
  if (outside_max > tol) {
    rep.mark_vacuous("u exceeds tol outside D");
    return rep;
  }

  Field lu = ev.eval_field(u, &D);
  double worst_op = -std::numeric_limits<double>::infinity();
  std::size_t worst_node = inside.front();
  for (std::size_t k : inside) {
    double v = lu[k] + c_field[k] * u[k];
    if (v > worst_op) {
      worst_op = v;
      worst_node = k;
    }
  }
  rep.hypotheses["max_operator_plus_cu_on_D"] = worst_op;
  rep.hypotheses["worst_operator_node"] = worst_node;
  if (worst_op > tol) {
    rep.mark_vacuous("operator inequality fails on D");
    return rep;
  }

  double max_u = -std::numeric_limits<double>::infinity();
  for (std::size_t k : inside) max_u = std::max(max_u, u[k]);
  rep.add(Assertion::le("max u over D", "maximum_principle_unbounded", max_u, tol));
  return rep;
}

// ---------------------------------------------------------------------------
// Strong maximum principle dichotomy: either u > v strictly inside, or u == v.
// ---------------------------------------------------------------------------

inline SuiteReport check_strong_max(const Field& u, const Field& v, const DomainSpec& D,
                                    double tol) {
  SuiteReport rep;
  rep.suite = "strong_max";
  rep.hypotheses["tol"] = tol;
  const Grid& g = u.grid();
  if (v.size() != u.size()) throw invalid_argument_error("fields must share a grid");

  double global_min = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < u.size(); ++i) global_min = std::min(global_min, u[i] - v[i]);
  rep.hypotheses["min_u_minus_v"] = global_min;
  if (global_min < -tol) {
    rep.mark_vacuous("u >= v fails");
    return rep;
  }

  auto inside = D.grid_nodes(g);
  if (inside.empty()) {
    rep.mark_vacuous("D contains no grid nodes");
    return rep;
  }
  double interior_min = std::numeric_limits<double>::infinity();
  double sup_diff = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) sup_diff = std::max(sup_diff, std::abs(u[i] - v[i]));
  for (std::size_t k : inside) interior_min = std::min(interior_min, u[k] - v[k]);

  bool strict = interior_min > tol;
  bool identical = sup_diff <= 10.0 * tol;
  rep.hypotheses["branch"] = strict ? "strict" : (identical ? "identical" : "violated");
  if (strict) {
    rep.add(Assertion::gt("min (u-v) inside D", "strong_maximum_principle", interior_min, tol));
  } else {
    rep.add(Assertion::le("sup |u-v|", "strong_maximum_principle", sup_diff, 10.0 * tol));
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Comparison principle: L u >= L v on Gamma and u >= v outside give u >= v.
// ---------------------------------------------------------------------------

inline SuiteReport check_comparison(const Evaluator& ev, const Field& u, const Field& v,
                                    const DomainSpec& gamma, double tol) {
  SuiteReport rep;
  rep.suite = "comparison";
  rep.hypotheses["tol"] = tol;
  const Grid& g = ev.grid();
  auto inside = gamma.grid_nodes(g);
  rep.hypotheses["nodes_in_gamma"] = inside.size();
  if (inside.empty()) {
    rep.mark_vacuous("Gamma contains no grid nodes");
    return rep;
  }

  double outside_min = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (!gamma.contains(g.node(i))) outside_min = std::min(outside_min, u[i] - v[i]);
  }
  auto [ulo, uhi] = u.rule().far_values();
  auto [vlo, vhi] = v.rule().far_values();
  outside_min = std::min({outside_min, ulo - vlo, uhi - vhi});
  rep.hypotheses["min_u_minus_v_outside"] = outside_min;
  if (outside_min < -tol) {
    rep.mark_vacuous("u >= v fails outside Gamma");
    return rep;
  }

  Field lu = ev.eval_field(u, &gamma);
  Field lv = ev.eval_field(v, &gamma);
  double op_min = std::numeric_limits<double>::infinity();
  for (std::size_t k : inside) op_min = std::min(op_min, lu[k] - lv[k]);
  rep.hypotheses["min_operator_gap_on_gamma"] = op_min;
  if (op_min < -tol) {
    rep.mark_vacuous("operator ordering fails on Gamma");
    return rep;
  }

  double min_diff = std::numeric_limits<double>::infinity();
  for (std::size_t k : inside) min_diff = std::min(min_diff, u[k] - v[k]);
  rep.add(Assertion::ge("min (u-v) on Gamma", "comparison_principle", min_diff, -tol));
  return rep;
}

// ---------------------------------------------------------------------------
// Lower bound far from the boundary: u > eps1 where dist > R0.
// ---------------------------------------------------------------------------

inline SuiteReport check_bound_below(const Field& u, const DomainSpec& omega, double R0,
                                     double eps1) {
  SuiteReport rep;
  rep.suite = "bound_below";
  rep.hypotheses["R0"] = R0;
  rep.hypotheses["eps1"] = eps1;
  const Grid& g = u.grid();
  double min_u = std::numeric_limits<double>::infinity();
  std::size_t count = 0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    Point x = g.node(i);
    if (omega.contains(x) && omega.boundary_distance(x) > R0) {
      min_u = std::min(min_u, u[i]);
      ++count;
    }
  }
  rep.hypotheses["nodes_tested"] = count;
  if (count == 0) {
    rep.mark_vacuous("no grid nodes beyond R0 (empty node set)");
    return rep;
  }
  rep.hypotheses["largest_passing_eps1"] = min_u;
  rep.add(Assertion::gt("min u beyond R0", "lower_bound_far_from_boundary", min_u, eps1));
  return rep;
}

// ---------------------------------------------------------------------------
// Uniform far-field limit: d(eps) = least distance with sup |mu - u| <= eps.
// ---------------------------------------------------------------------------

inline SuiteReport check_asymptotic(const Field& u, const DomainSpec& omega, double mu,
                                    std::vector<double> eps_levels) {
  SuiteReport rep;
  rep.suite = "asymptotic";
  rep.hypotheses["mu"] = mu;
  rep.hypotheses["eps_levels"] = eps_levels;
  const Grid& g = u.grid();

  std::vector<std::pair<double, double>> samples;  // (distance, |mu - u|)
  for (std::size_t i = 0; i < g.size(); ++i) {
    Point x = g.node(i);
    if (omega.contains(x)) samples.emplace_back(omega.boundary_distance(x), std::abs(mu - u[i]));
  }
  if (samples.empty()) {
    rep.mark_vacuous("omega contains no grid nodes");
    return rep;
  }
  std::sort(samples.begin(), samples.end());
  // suffix_max[k] = worst deviation among nodes at distance >= samples[k]
  std::vector<double> suffix_max(samples.size());
  double run = 0.0;
  for (std::size_t k = samples.size(); k-- > 0;) {
    run = std::max(run, samples[k].second);
    suffix_max[k] = run;
  }
  auto d_of = [&](double eps) {
    // smallest sampled distance whose suffix already meets eps
    for (std::size_t k = 0; k < samples.size(); ++k) {
      if (suffix_max[k] <= eps) return k == 0 ? 0.0 : samples[k].first;
    }
    return std::numeric_limits<double>::infinity();
  };

  json profile = json::array();
  double prev_d = std::numeric_limits<double>::infinity();
  std::sort(eps_levels.begin(), eps_levels.end());
  for (double eps : eps_levels) {
    double d = d_of(eps);
    json row;
    row["eps"] = eps;
    row["distance"] = d;
    profile.push_back(row);
    rep.add(Assertion::le("d(eps=" + format_double(eps) + ") finite", "uniform_far_field_limit",
                          d, samples.back().first));
    // larger eps must not need a larger distance
    rep.add(Assertion::le("d nonincreasing at eps=" + format_double(eps),
                          "uniform_far_field_limit", 0.0, prev_d >= d ? 0.0 : -1.0));
    prev_d = d;
  }
  rep.hypotheses["profile"] = profile;
  return rep;
}

// ---------------------------------------------------------------------------
// Strict monotonicity along a lattice direction.
// ---------------------------------------------------------------------------

inline SuiteReport check_monotonicity(const Field& u, const DomainSpec& omega,
                                      const Point& direction, double tol,
                                      double strict_fraction = 0.95) {
  SuiteReport rep;
  rep.suite = "monotonicity";
  rep.hypotheses["tol"] = tol;
  rep.hypotheses["strict_fraction"] = strict_fraction;
  const Grid& g = u.grid();
  if (direction.size() != static_cast<std::size_t>(g.dim))
    throw invalid_argument_error("direction dimension does not match the grid");
  std::array<int, 2> step{0, 0};
  for (int a = 0; a < g.dim; ++a) {
    double c = direction[static_cast<std::size_t>(a)];
    if (std::abs(c - std::round(c)) > 1e-9)
      throw invalid_argument_error("direction must have integer cell components");
    step[static_cast<std::size_t>(a)] = static_cast<int>(std::round(c));
  }

  double worst = std::numeric_limits<double>::infinity();
  std::size_t pairs = 0, strict = 0;
  for (int i1 = 0; i1 < (g.dim == 2 ? g.counts[1] : 1); ++i1) {
    for (int i0 = 0; i0 < g.counts[0]; ++i0) {
      int j0 = i0 + step[0], j1 = i1 + step[1];
      if (j0 < 0 || j0 >= g.counts[0] || j1 < 0 || (g.dim == 2 && j1 >= g.counts[1])) continue;
      std::size_t a = g.flat(i0, i1), b = g.flat(j0, j1);
      if (!omega.contains(g.node(a)) || !omega.contains(g.node(b))) continue;
      double d = u[b] - u[a];
      worst = std::min(worst, d);
      ++pairs;
      if (d > tol) ++strict;
    }
  }
  rep.hypotheses["pairs"] = pairs;
  if (pairs == 0) {
    rep.mark_vacuous("no interior node pairs along direction");
    return rep;
  }
  rep.add(Assertion::ge("min forward difference", "monotone_increasing_last_axis", worst, -tol));
  rep.add(Assertion::ge("strict fraction", "monotone_increasing_last_axis",
                        static_cast<double>(strict) / static_cast<double>(pairs),
                        strict_fraction));
  return rep;
}

// ---------------------------------------------------------------------------
// Half-space reduction: slices orthogonal to the last axis are constant.
// ---------------------------------------------------------------------------

inline SuiteReport check_1d_reduction(const Field& u, double tol) {
  SuiteReport rep;
  rep.suite = "reduction_1d";
  rep.hypotheses["tol"] = tol;
  const Grid& g = u.grid();
  if (g.dim != 2) {
    rep.mark_vacuous("needs a 2D half-space field");
    return rep;
  }
  double worst = 0.0;
  int worst_slice = 0;
  for (int i1 = 0; i1 < g.counts[1]; ++i1) {
    double lo = std::numeric_limits<double>::infinity(), hi = -lo;
    for (int i0 = 0; i0 < g.counts[0]; ++i0) {
      double v = u[g.flat(i0, i1)];
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
    if (hi - lo > worst) {
      worst = hi - lo;
      worst_slice = i1;
    }
  }
  rep.hypotheses["worst_slice"] = worst_slice;
  rep.add(Assertion::le("max cross-slice variation", "tangential_independence", worst, 10.0 * tol));
  return rep;
}

// ---------------------------------------------------------------------------
// G(t1+t2) <= 2^(p-2) (G(t1)+G(t2)) whenever t1+t2 > 0.
// ---------------------------------------------------------------------------

inline SuiteReport check_g_inequality(const std::vector<double>& p_samples, int pairs_per_p,
                                      Rng& rng) {
  SuiteReport rep;
  rep.suite = "g_inequality";
  rep.hypotheses["pairs_per_p"] = pairs_per_p;
  rep.hypotheses["p_samples"] = p_samples;
  const double slack = 1e-12;
  for (double p : p_samples) {
    double scale = std::pow(2.0, p - 2.0);
    long violations = 0;
    double worst_margin = std::numeric_limits<double>::infinity();
    for (int k = 0; k < pairs_per_p; ++k) {
      double t1, t2;
      do {
        t1 = rng.uniform(-3.0, 3.0);
        t2 = rng.uniform(-3.0, 3.0);
      } while (!(t1 + t2 > 0.0));
      double lhs = g_power(t1 + t2, p);
      double rhs = scale * (g_power(t1, p) + g_power(t2, p));
      double margin = rhs - lhs + slack * std::max({1.0, std::abs(lhs), std::abs(rhs)});
      worst_margin = std::min(worst_margin, margin);
      if (margin < 0.0) ++violations;
    }
    std::string tag = "p=" + format_double(p);
    rep.add(Assertion::le("violations at " + tag, "g_subadditivity",
                          static_cast<double>(violations), 0.0));
    rep.add(Assertion::ge("worst slack-adjusted margin at " + tag, "g_subadditivity",
                          worst_margin, 0.0));
    // equality at t1 = t2 = 1: both sides are 2^(p-1)
    double eq_gap = std::abs(g_power(2.0, p) - scale * 2.0);
    rep.add(Assertion::le("equality at (1,1), " + tag, "g_subadditivity", eq_gap,
                          1e-12 * std::pow(2.0, p - 1.0)));
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Perturbation bound: gap(eps, delta) decomposes into a near part scaling
// like delta^(p(1-s)) and a far part a(delta)*eps with a(delta) growing no
// faster than delta^(-sp).
// ---------------------------------------------------------------------------

inline SuiteReport check_perturbation_bound(const Evaluator& ev, const Field& u,
                                            const Field& bump, const Point& x,
                                            const std::vector<double>& eps_grid,
                                            const std::vector<double>& delta_grid) {
  SuiteReport rep;
  rep.suite = "perturbation";
  rep.hypotheses["eps_grid"] = eps_grid;
  rep.hypotheses["delta_grid"] = delta_grid;
  const double p = ev.params().p;
  const double s = ev.params().s;
  const double sp = ev.params().sp();
  const double near_target = p * (1.0 - s);
  rep.hypotheses["near_exponent_target"] = near_target;

  if (bump.sup_norm() == 0.0) {
    double worst = 0.0;
    for (double eps : eps_grid) worst = std::max(worst, perturbation_gap(ev, u, bump, eps, x));
    rep.add(Assertion::le("all gaps for zero bump", "perturbation_bound", worst, 0.0));
    return rep;
  }

  // Signed near/far gap parts per (eps, delta).
  std::vector<std::vector<double>> near_gap(eps_grid.size()), far_gap(eps_grid.size());
  for (std::size_t ei = 0; ei < eps_grid.size(); ++ei) {
    Field moved(u.grid(), u.values(), u.rule());
    for (std::size_t i = 0; i < moved.size(); ++i) moved[i] += eps_grid[ei] * bump[i];
    for (double delta : delta_grid) {
      auto [n1, f1] = ev.eval_point_split(moved, x, delta);
      auto [n0, f0] = ev.eval_point_split(u, x, delta);
      near_gap[ei].push_back(n1 - n0);
      far_gap[ei].push_back(f1 - f0);
    }
  }

  // Near-field exponent: log-log slope over delta at the largest eps.
  {
    std::size_t ei = 0;
    for (std::size_t k = 1; k < eps_grid.size(); ++k) {
      if (eps_grid[k] > eps_grid[ei]) ei = k;
    }
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int m = 0;
    for (std::size_t di = 0; di < delta_grid.size(); ++di) {
      double mag = std::abs(near_gap[ei][di]);
      if (mag <= 0.0) continue;
      double lx = std::log(delta_grid[di]), ly = std::log(mag);
      sx += lx, sy += ly, sxx += lx * lx, sxy += lx * ly;
      ++m;
    }
    double slope = m >= 2 ? (m * sxy - sx * sy) / (m * sxx - sx * sx) : 0.0;
    rep.hypotheses["near_exponent_fit"] = slope;
    rep.add(Assertion::ge("near-field exponent", "perturbation_bound", slope, 0.7 * near_target));
    rep.add(Assertion::le("near-field exponent", "perturbation_bound", slope, 1.3 * near_target));
  }

  // a(delta): least-squares slope of the far gap against eps, per delta.
  std::vector<double> a_of_delta(delta_grid.size(), 0.0);
  std::vector<double> c_near(delta_grid.size(), 0.0);
  for (std::size_t di = 0; di < delta_grid.size(); ++di) {
    double see = 0.0, sef = 0.0, sen = 0.0;
    for (std::size_t ei = 0; ei < eps_grid.size(); ++ei) {
      see += eps_grid[ei] * eps_grid[ei];
      sef += eps_grid[ei] * far_gap[ei][di];
      sen += eps_grid[ei] * near_gap[ei][di];
    }
    a_of_delta[di] = std::abs(sef / see);
    c_near[di] = sen / see;
  }
  rep.hypotheses["a_of_delta"] = a_of_delta;

  // Monotone growth as delta shrinks (delta grid sorted ascending).
  {
    std::vector<std::size_t> order(delta_grid.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return delta_grid[a] < delta_grid[b]; });
    double worst = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k + 1 < order.size(); ++k)
      worst = std::min(worst, a_of_delta[order[k]] - a_of_delta[order[k + 1]]);
    rep.add(Assertion::ge("a(delta) grows as delta shrinks", "perturbation_bound", worst, -1e-9));
  }

  // Factor-3 consistency with C * delta^(-sp): normalize by the geometric
  // mean of a(delta)*delta^sp over the grid.
  {
    double log_mean = 0.0;
    int m = 0;
    for (std::size_t di = 0; di < delta_grid.size(); ++di) {
      if (a_of_delta[di] > 0.0) {
        log_mean += std::log(a_of_delta[di] * std::pow(delta_grid[di], sp));
        ++m;
      }
    }
    if (m > 0) log_mean /= m;
    double cal = std::exp(log_mean);
    double worst_ratio = 1.0;
    for (std::size_t di = 0; di < delta_grid.size(); ++di) {
      double ratio = a_of_delta[di] * std::pow(delta_grid[di], sp) / cal;
      worst_ratio = std::max(worst_ratio, std::max(ratio, 1.0 / ratio));
    }
    rep.hypotheses["calibration_constant"] = cal;
    rep.add(
        Assertion::le("delta^(-sp) band for a(delta)", "perturbation_bound", worst_ratio, 3.0));
  }

  // The eps-linear model reproduces the measured total gap.
  {
    double resid = 0.0, scale = 0.0;
    for (std::size_t ei = 0; ei < eps_grid.size(); ++ei) {
      for (std::size_t di = 0; di < delta_grid.size(); ++di) {
        double total = near_gap[ei][di] + far_gap[ei][di];
        double model = (c_near[di] + (far_gap[ei][di] < 0 ? -1.0 : 1.0) * a_of_delta[di]) *
                       eps_grid[ei];
        resid = std::max(resid, std::abs(total - model));
        scale = std::max(scale, std::abs(total));
      }
    }
    rep.hypotheses["gap_scale"] = scale;
    rep.add(Assertion::le("model residual / gap scale", "perturbation_bound",
                          scale > 0 ? resid / scale : 0.0, 0.10));
  }
  return rep;
}

}  // namespace fplap
