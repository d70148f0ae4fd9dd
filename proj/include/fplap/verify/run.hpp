#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "fplap/barriers.hpp"
#include "fplap/core/csv.hpp"
#include "fplap/solve/eigenpair.hpp"
#include "fplap/solve/sliding.hpp"
#include "fplap/solve/steady.hpp"
#include "fplap/verify/suites.hpp"

namespace fplap {

inline const std::vector<std::string>& known_suites() {
  static const std::vector<std::string> names = {
      "g_inequality", "density",      "max_principle", "strong_max",
      "comparison",   "bound_below",  "asymptotic",    "monotonicity",
      "sliding",      "uniqueness",   "perturbation",  "reduction_1d"};
  return names;
}

inline bool is_known_suite(const std::string& name) {
  for (const auto& s : known_suites()) {
    if (s == name) return true;
  }
  return false;
}

struct VerifyConfig {
  std::vector<std::string> suites;
  ProblemSpec problem;
  SolveConfig solve;
  std::uint64_t seed = 42;
  std::string config_hash;
  std::string artifact_dir;  // empty = no field dumps
  double r0 = 10.0;
  double eps1 = 0.9;
  std::vector<double> eps_levels = {0.05, 0.02, 0.01};
  int density_samples = 10000;
  int g_pairs = 100000;
  std::vector<double> g_p_samples = {2.0, 2.5, 3.0, 4.0, 6.0};
  std::vector<double> perturb_eps = {0.5, 0.25, 0.125, 0.0625, 0.03125, 0.015625, 0.0078125,
                                     0.00390625};
  std::vector<double> perturb_delta = {0.2, 0.4, 0.8, 1.6};
};

/// The workhorse instance: Allen-Cahn on the half line x > 0, truncated at
/// 40 with near-mu data beyond the truncation face.
inline VerifyConfig default_verify_config() {
  VerifyConfig cfg;
  double h = 0.05;
  int n = 800;
  Grid grid{.dim = 1, .origin = {0.5 * h, 0.0}, .h = h, .counts = {n, 1}, .r_trunc = 0.0};
  double mu_far = 1.0 - 1e-6;
  ExteriorRule rule = ExteriorRule::axis_step(0, 0.0, 0.0, mu_far);
  cfg.problem = ProblemSpec{OperatorParams{.n = 1, .s = 0.5, .p = 2.0, .c_norm = 1.0},
                            grid,
                            DomainSpec::half_space(0, 0.0),
                            make_allen_cahn(),
                            rule,
                            Field(grid, rule, 0.0),
                            QuadratureConfig{}};
  cfg.solve = SolveConfig{.dt = 0.0, .tol = 1e-6, .max_iters = 200000, .damping = 1.0, .threads = 1};
  cfg.suites = {"g_inequality", "density",    "max_principle", "strong_max",
                "comparison",   "bound_below", "asymptotic",   "monotonicity",
                "sliding",      "uniqueness", "perturbation"};
  return cfg;
}

namespace detail {

/// Lazily solved fields shared across suites.
class VerifyContext {
 public:
  explicit VerifyContext(const VerifyConfig& cfg) : cfg_(cfg) {}

  const VerifyConfig& cfg() const { return cfg_; }

  const SolveResult& primary() {
    if (!primary_) primary_ = solve_steady(cfg_.problem, cfg_.solve);
    return *primary_;
  }

  const SolveResult& secondary() {
    if (!secondary_) {
      ProblemSpec alt = cfg_.problem;
      const Grid& g = alt.grid;
      double mu = alt.nl.mu;
      int last = alt.grid.dim - 1;
      double lo = alt.grid.box_lo(last), hi = alt.grid.box_hi(last);
      for (std::size_t i = 0; i < alt.init.size(); ++i) {
        Point x = g.node(i);
        if (alt.omega.contains(x)) {
          double t = (x[static_cast<std::size_t>(last)] - lo) / (hi - lo);
          alt.init[i] = std::clamp(t, 0.0, 1.0) * (mu - 1e-9);
        }
      }
      secondary_ = solve_steady(alt, cfg_.solve);
    }
    return *secondary_;
  }

  const Evaluator& evaluator() {
    if (!evaluator_)
      evaluator_ = std::make_unique<Evaluator>(cfg_.problem.grid, cfg_.problem.params,
                                               cfg_.problem.quad);
    return *evaluator_;
  }

 private:
  const VerifyConfig& cfg_;
  std::optional<SolveResult> primary_;
  std::optional<SolveResult> secondary_;
  std::unique_ptr<Evaluator> evaluator_;
};

inline SuiteReport density_suite(const VerifyConfig& cfg) {
  SuiteReport rep;
  rep.suite = "density";
  Rng rng(cfg.seed);
  int samples = cfg.density_samples;

  // Half-space complement: symmetry forces the limit 1/2.  The annulus
  // center sits off the hyperplane, which biases small annuli; the tail of
  // the j range is where the limit shows.
  DomainSpec half = DomainSpec::complement_of(DomainSpec::half_space(1, 0.0));
  auto half_rep = estimate_annulus_density(half, {0.3, 0.7}, 1.0, 4, 12, samples, rng);
  rep.hypotheses["half_space"] = density_to_json(half_rep);
  rep.add(Assertion::le("half-space |liminf - 0.5|", "annulus_density",
                        std::abs(half_rep.liminf_estimate - 0.5),
                        3.0 * std::max(half_rep.se_at_liminf, 1e-12)));

  // Complement of the slab family: slabs of unit period fill half of every
  // large annulus.
  DomainSpec slabs = DomainSpec::complement_of(DomainSpec::perforated_slabs());
  auto slab_rep = estimate_annulus_density(slabs, {0.3, 0.7}, 1.0, 0, 8, samples, rng);
  rep.hypotheses["perforated_slabs_complement"] = density_to_json(slab_rep);
  rep.add(Assertion::ge("slab-complement liminf", "annulus_density", slab_rep.liminf_estimate,
                        0.4));

  // A single bounded ball vanishes from growing annuli.
  DomainSpec one_ball = DomainSpec::ball({0.0, 0.0}, 1.0);
  auto ball_rep = estimate_annulus_density(one_ball, {3.0, 0.0}, 1.0, 0, 8, samples, rng);
  rep.hypotheses["single_ball"] = density_to_json(ball_rep);
  double beyond6 = 0.0;
  for (int j = 6; j <= 8; ++j) beyond6 = std::max(beyond6, ball_rep.ratios[static_cast<std::size_t>(j)]);
  rep.add(Assertion::le("ball ratio beyond j=6", "annulus_density", beyond6, 0.005));
  return rep;
}

inline SuiteReport max_principle_suite(VerifyContext& ctx) {
  const VerifyConfig& cfg = ctx.cfg();
  const Field& u = ctx.primary().u;
  const Grid& g = cfg.problem.grid;
  double mu = cfg.problem.nl.mu;
  double tol = cfg.solve.tol;

  // Live instance: w = u - mu with the secant coefficient
  // c(x) = f(u)/(mu - u) >= 0.  Then L w + c w = f(u) - f(u) = 0 on omega
  // and w < 0 outside, so the hypotheses hold exactly and the principle
  // forces w <= 0, i.e. the solution stays below mu.
  auto [flo, fhi] = u.rule().far_values();
  int last = g.dim - 1;
  Field deficit(g, ExteriorRule::axis_step(last, 0.5 * (g.box_lo(last) + g.box_hi(last)),
                                           flo - mu, fhi - mu));
  Field c_field(g, ExteriorRule::zero());
  for (std::size_t i = 0; i < u.size(); ++i) {
    deficit[i] = u[i] - mu;
    double gap = mu - u[i];
    c_field[i] = gap > 1e-14 ? std::max(cfg.problem.nl.f(u[i]), 0.0) / gap : 0.0;
  }
  // Complement density of the tested region, attached as a hypothesis.
  Rng rng(cfg.seed ^ 0x9e3779b97f4a7c15ull);
  DomainSpec sigma = DomainSpec::complement_of(cfg.problem.omega);
  Point probe(static_cast<std::size_t>(g.dim), 0.3);
  DensityReport density =
      estimate_annulus_density(sigma, probe, 1.0, 4, 12, cfg.density_samples, rng);

  SuiteReport rep = check_max_principle(ctx.evaluator(), deficit, c_field, cfg.problem.omega, tol,
                                        &density);
  rep.hypotheses["c_field"] = "secant slope f(u)/(mu-u)";

  // Zero field, zero coefficient: hypotheses hold and the margin is zero.
  Field zero(g, ExteriorRule::zero());
  SuiteReport trivial =
      check_max_principle(ctx.evaluator(), zero, zero, cfg.problem.omega, tol);
  rep.add(Assertion::ge("trivial zero instance", "plumbing",
                        trivial.passed() && !trivial.vacuous() ? 1.0 : 0.0, 1.0));

  // Overshoot set D = {u > mu}: empty in practice, and vacuous-or-pass is
  // exactly what that certifies.
  DomainSpec above = DomainSpec::custom(
      [&u, mu](const Point& x) {
        std::size_t idx = u.grid().node_index_of(x);
        return idx != Grid::npos && u[idx] > mu;
      },
      [](const Point&) { return 0.0; });
  SuiteReport overshoot = check_max_principle(ctx.evaluator(), deficit,
                                              Field(g, ExteriorRule::zero()), above, tol);
  rep.hypotheses["overshoot_instance"] =
      overshoot.vacuous() ? "vacuous (empty overshoot set)" : "pass";
  rep.add(Assertion::ge("overshoot instance vacuous-or-pass", "upper_bound_below_mu",
                        overshoot.passed() ? 1.0 : 0.0, 1.0));
  return rep;
}

inline SuiteReport strong_max_suite(VerifyContext& ctx) {
  const VerifyConfig& cfg = ctx.cfg();
  const Field& u = ctx.primary().u;
  const Field& v = ctx.secondary().u;
  double tol = cfg.solve.tol;
  SuiteReport rep = check_strong_max(u, v, cfg.problem.omega, tol);
  rep.suite = "strong_max";

  // Strict branch: the translate against the monotone direction sits below.
  const Grid& g = u.grid();
  Field shifted(g, u.rule());
  for (int i1 = 0; i1 < (g.dim == 2 ? g.counts[1] : 1); ++i1) {
    for (int i0 = 0; i0 < g.counts[0]; ++i0) {
      int j0 = g.dim == 1 ? i0 - 1 : i0;
      int j1 = g.dim == 1 ? 0 : i1 - 1;
      shifted[g.flat(i0, i1)] = u.node_or_exterior(j0, j1);
    }
  }
  SuiteReport strict = check_strong_max(u, shifted, cfg.problem.omega, tol);
  bool strict_ok = strict.passed() && !strict.vacuous() &&
                   strict.hypotheses["branch"] == json("strict");
  rep.hypotheses["translate_branch"] = strict.hypotheses["branch"];
  rep.add(Assertion::ge("translate takes the strict branch", "strong_maximum_principle",
                        strict_ok ? 1.0 : 0.0, 1.0));
  return rep;
}

inline SuiteReport comparison_suite(VerifyContext& ctx) {
  const VerifyConfig& cfg = ctx.cfg();
  const Field& u = ctx.primary().u;
  const Grid& g = u.grid();
  double tol = cfg.solve.tol;
  double s = cfg.problem.params.s;

  // Tangency ball of radius 1 touching the boundary of the half space from
  // inside; D collects the deep interior where the solution is bounded below.
  int last = g.dim - 1;
  Point center(static_cast<std::size_t>(g.dim), 0.0);
  center[static_cast<std::size_t>(last)] = 1.0;
  DomainSpec ball = DomainSpec::ball(center, 1.0);
  const DomainSpec& omega = cfg.problem.omega;
  double r0 = cfg.r0;
  DomainSpec deep = DomainSpec::custom(
      [&omega, r0](const Point& x) {
        return omega.contains(x) && omega.boundary_distance(x) >= 2.0 * r0;
      },
      [&omega](const Point& x) { return omega.boundary_distance(x); });

  // Halve eps until the operator-sign hypothesis holds numerically.
  double eps = cfg.problem.nl.mu;
  SuiteReport rep;
  for (int k = 0; k < 24; ++k) {
    Field sub = build_subsolution(u, deep, eps, center, s);
    rep = check_comparison(ctx.evaluator(), u, sub, ball, tol);
    if (!rep.vacuous()) break;
    eps *= 0.5;
  }
  rep.suite = "comparison";
  rep.hypotheses["subsolution_eps"] = eps;

  if (!rep.vacuous()) {
    // Growth away from the tangency point: u >= eps * dist^s along the
    // inward normal within the ball.
    double worst = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < g.size(); ++i) {
      Point x = g.node(i);
      if (!ball.contains(x)) continue;
      if (x[static_cast<std::size_t>(last)] > 1.0) continue;  // inner half toward the tangency
      double dist = x[static_cast<std::size_t>(last)];
      worst = std::min(worst, u[i] - eps * std::pow(dist, s));
    }
    if (std::isfinite(worst))
      rep.add(Assertion::ge("u - eps*dist^s near tangency", "comparison_principle", worst, -tol));
  }

  // Constant-shift instance: differences are translation invariant, so the
  // operator ordering holds with equality and the margin is the shift.
  double shift = 0.1;
  auto [flo, fhi] = u.rule().far_values();
  Field v(g, ExteriorRule::axis_step(last, 0.5 * (g.box_lo(last) + g.box_hi(last)), flo - shift,
                                     fhi - shift));
  for (std::size_t i = 0; i < u.size(); ++i) v[i] = u[i] - shift;
  Point mid(static_cast<std::size_t>(g.dim), 0.0);
  for (int a = 0; a < g.dim; ++a) mid[static_cast<std::size_t>(a)] = 0.5 * (g.box_lo(a) + g.box_hi(a));
  SuiteReport shifted = check_comparison(ctx.evaluator(), u, v, DomainSpec::ball(mid, 5.0), tol);
  rep.add(Assertion::ge("constant-shift instance", "comparison_principle",
                        shifted.passed() && !shifted.vacuous() ? 1.0 : 0.0, 1.0));
  return rep;
}

inline SuiteReport sliding_suite(VerifyContext& ctx) {
  const Field& u = ctx.primary().u;
  const Grid& g = u.grid();
  SuiteReport rep;
  rep.suite = "sliding";
  Point dir(static_cast<std::size_t>(g.dim), 0.0);
  dir[static_cast<std::size_t>(g.dim - 1)] = 1.0;
  double h = g.h;

  double sup_h = slide_compare(u, h, dir).sup;
  rep.add(Assertion::le("sup w_tau at tau=h", "sliding_infimum_vanishes", sup_h, 1e-8));
  for (int m : {2, 8, 32}) {
    double sup = slide_compare(u, m * h, dir).sup;
    rep.add(Assertion::le("sup w_tau at tau=" + std::to_string(m) + "h",
                          "sliding_infimum_vanishes", sup, 1e-8));
  }
  double tau0 = tau_zero_estimate(u, dir, 40.0 * h, 1e-8);
  rep.hypotheses["tau0"] = tau0;
  rep.add(Assertion::le("tau0 estimate", "sliding_infimum_vanishes", tau0, h));
  return rep;
}

inline SuiteReport uniqueness_suite(VerifyContext& ctx) {
  const Field& a = ctx.primary().u;
  const Field& b = ctx.secondary().u;
  SuiteReport rep;
  rep.suite = "uniqueness";
  double sup = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) sup = std::max(sup, std::abs(a[i] - b[i]));
  rep.hypotheses["init_a"] = "zero";
  rep.hypotheses["init_b"] = "ramp clipped to [0, mu)";
  rep.add(Assertion::le("sup |u_a - u_b|", "uniqueness_of_bounded_solution", sup,
                        10.0 * ctx.cfg().solve.tol));
  rep.add(Assertion::ge("flow residual tail monotone", "plumbing",
                        (ctx.primary().residual_tail_monotone &&
                         ctx.secondary().residual_tail_monotone)
                            ? 1.0
                            : 0.0,
                        1.0));
  return rep;
}

inline SuiteReport perturbation_suite(VerifyContext& ctx) {
  const VerifyConfig& cfg = ctx.cfg();
  const Field& u = ctx.primary().u;
  const Grid& g = u.grid();
  // Smooth bump of support 2 centered mid-domain; gaps sampled at its center.
  Point center(static_cast<std::size_t>(g.dim), 0.0);
  for (int a = 0; a < g.dim; ++a)
    center[static_cast<std::size_t>(a)] = 0.5 * (g.box_lo(a) + g.box_hi(a));
  Field bump = scaled(BarrierKind::bump1, center, 2.0, 1.0, g);
  std::size_t idx = 0;
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < g.size(); ++i) {
    Point x = g.node(i);
    double d2 = 0.0;
    for (int a = 0; a < g.dim; ++a) {
      double t = x[static_cast<std::size_t>(a)] - center[static_cast<std::size_t>(a)];
      d2 += t * t;
    }
    if (d2 < best) {
      best = d2;
      idx = i;
    }
  }
  return check_perturbation_bound(ctx.evaluator(), u, bump, g.node(idx), cfg.perturb_eps,
                                  cfg.perturb_delta);
}

inline SuiteReport reduction_suite(VerifyContext& ctx) {
  const VerifyConfig& cfg = ctx.cfg();
  if (cfg.problem.grid.dim != 2) {
    SuiteReport rep;
    rep.suite = "reduction_1d";
    rep.mark_vacuous("needs a 2D half-space problem");
    return rep;
  }
  return check_1d_reduction(ctx.primary().u, cfg.solve.tol);
}

}  // namespace detail

/// Runs the named suites against the configured problem instance, solving it
/// (and the alternative-initialization twin) at most once.  Unknown suite
/// names are rejected up front.
inline AggregateReport run_all(const VerifyConfig& cfg) {
  for (const auto& name : cfg.suites) {
    if (!is_known_suite(name))
      throw invalid_argument_error("unknown suite name: " + name);
  }
  detail::VerifyContext ctx(cfg);
  AggregateReport agg;
  agg.seed = cfg.seed;
  agg.config_hash = cfg.config_hash;

  json instance;
  instance["n"] = cfg.problem.params.n;
  instance["s"] = cfg.problem.params.s;
  instance["p"] = cfg.problem.params.p;
  instance["c_norm"] = cfg.problem.params.c_norm;
  instance["h"] = cfg.problem.grid.h;
  instance["counts"] = std::vector<int>(cfg.problem.grid.counts.begin(),
                                        cfg.problem.grid.counts.begin() + cfg.problem.grid.dim);
  instance["nonlinearity"] = cfg.problem.nl.name;
  instance["exterior"] = cfg.problem.exterior.serialize();
  instance["solver_tol"] = cfg.solve.tol;

  for (const auto& name : cfg.suites) {
    SuiteReport rep;
    if (name == "g_inequality") {
      Rng rng(cfg.seed);
      rep = check_g_inequality(cfg.g_p_samples, cfg.g_pairs, rng);
    } else if (name == "density") {
      rep = detail::density_suite(cfg);
    } else if (name == "max_principle") {
      rep = detail::max_principle_suite(ctx);
    } else if (name == "strong_max") {
      rep = detail::strong_max_suite(ctx);
    } else if (name == "comparison") {
      rep = detail::comparison_suite(ctx);
    } else if (name == "bound_below") {
      rep = check_bound_below(ctx.primary().u, cfg.problem.omega, cfg.r0, cfg.eps1);
    } else if (name == "asymptotic") {
      rep = check_asymptotic(ctx.primary().u, cfg.problem.omega, cfg.problem.nl.mu,
                             cfg.eps_levels);
    } else if (name == "monotonicity") {
      Point dir(static_cast<std::size_t>(cfg.problem.grid.dim), 0.0);
      dir[static_cast<std::size_t>(cfg.problem.grid.dim - 1)] = 1.0;
      rep = check_monotonicity(ctx.primary().u, cfg.problem.omega, dir, cfg.solve.tol);
    } else if (name == "sliding") {
      rep = detail::sliding_suite(ctx);
    } else if (name == "uniqueness") {
      rep = detail::uniqueness_suite(ctx);
    } else if (name == "perturbation") {
      rep = detail::perturbation_suite(ctx);
    } else if (name == "reduction_1d") {
      rep = detail::reduction_suite(ctx);
    }
    rep.seed = cfg.seed;
    rep.config_hash = cfg.config_hash;
    rep.hypotheses["instance"] = instance;
    agg.suites.push_back(std::move(rep));
  }
  return agg;
}

}  // namespace fplap
