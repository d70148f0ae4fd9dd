// Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

#include <gtest/gtest.h>

#include <Eigen/Dense>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <map>

#include "fplap/barriers.hpp"
#include "fplap/core/csv.hpp"
#include "fplap/solve/eigenpair.hpp"
#include "fplap/solve/sliding.hpp"
#include "fplap/solve/steady.hpp"
#include "fplap/verify/run.hpp"
#include "support/oracle.hpp"

using namespace fplap;

namespace {

class Stopwatch {
 public:
  Stopwatch() : start_(std::chrono::steady_clock::now()) {}
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

struct Banner {
  const char* tag;
  Stopwatch timer;
  explicit Banner(const char* t) : tag(t) {}
  ~Banner() {
    std::printf("[%s] %s  (%.1f s)\n", tag, ::testing::Test::HasFailure() ? "FAIL" : "PASS",
                timer.seconds());
    std::fflush(stdout);
  }
};

Grid grid_1d(double lo, double hi, double h) {
  int n = static_cast<int>(std::lround((hi - lo) / h)) + 1;
  return Grid{.dim = 1, .origin = {lo, 0.0}, .h = h, .counts = {n, 1}};
}

constexpr double kMuFar = 1.0 - 1e-6;

ProblemSpec half_line_problem(double p, bool ramp_init) {
  double h = 0.05;
  int n = 800;
  Grid g{.dim = 1, .origin = {0.5 * h, 0.0}, .h = h, .counts = {n, 1}};
  ExteriorRule rule = ExteriorRule::axis_step(0, 0.0, 0.0, kMuFar);
  Field init(g, rule, 0.0);
  if (ramp_init) {
    for (std::size_t i = 0; i < init.size(); ++i) {
      double x = g.node(i)[0];
      init[i] = std::clamp(x / 40.0, 0.0, 1.0) * (1.0 - 1e-9);
    }
  }
  return ProblemSpec{OperatorParams{.n = 1, .s = 0.5, .p = p, .c_norm = 1.0},
                     g,
                     DomainSpec::half_space(0, 0.0),
                     make_allen_cahn(),
                     rule,
                     init,
                     QuadratureConfig{}};
}

const SolveResult& half_line_solution(double p, bool ramp_init, int threads = 1) {
  static std::map<std::tuple<double, bool, int>, SolveResult> cache;
  auto key = std::make_tuple(p, ramp_init, threads);
  auto it = cache.find(key);
  if (it == cache.end()) {
    SolveConfig cfg{.dt = 0.0, .tol = 1e-6, .max_iters = 200000, .damping = 1.0,
                    .threads = threads};
    it = cache.emplace(key, solve_steady(half_line_problem(p, ramp_init), cfg)).first;
  }
  return it->second;
}

}  // namespace

TEST(Acceptance, C1_GInequality) {
  Banner banner("criterion 1: G-inequality, 1e5 pairs x p in {2,2.5,3,4,6}");
  Rng rng(2024);
  SuiteReport rep = check_g_inequality({2.0, 2.5, 3.0, 4.0, 6.0}, 100000, rng);
  EXPECT_TRUE(rep.passed());
  for (const auto& a : rep.assertions) {
    EXPECT_TRUE(a.pass) << a.label << " measured " << a.measured;
  }
  EXPECT_LT(banner.timer.seconds(), 5.0);
}

TEST(Acceptance, C2_OperatorOracle) {
  Banner banner("criterion 2: p=2 operator vs adaptive-quadrature oracle");
  auto u_exact = [](double y) { return std::abs(y) < 1.0 ? std::sqrt(1.0 - y * y) : 0.0; };
  auto u_dd = [](double y) { return -std::pow(1.0 - y * y, -1.5); };
  const double xs[] = {0.0, 0.25, 0.5};
  double want[3];
  for (int k = 0; k < 3; ++k) want[k] = oracle::frac_laplacian_1d(u_exact, u_dd, xs[k], 0.5);

  double err[4][3];
  int level = 0;
  for (double h : {1.0 / 32, 1.0 / 64, 1.0 / 128, 1.0 / 256}) {
    Grid g = grid_1d(-2.0, 2.0, h);
    Evaluator ev(g, OperatorParams{.n = 1, .s = 0.5, .p = 2.0});
    Field u(g, ExteriorRule::zero());
    for (std::size_t i = 0; i < u.size(); ++i) u[i] = u_exact(g.node(i)[0]);
    for (int k = 0; k < 3; ++k) {
      err[level][k] = std::abs(ev.eval_point(u, {xs[k]}) - want[k]);
    }
    ++level;
  }
  for (int k = 0; k < 3; ++k) {
    EXPECT_LE(err[3][k] / std::abs(want[k]), 0.02) << "x = " << xs[k];
    for (int l = 0; l + 1 < 4; ++l) {
      EXPECT_LT(err[l + 1][k], err[l][k]) << "x = " << xs[k] << " level " << l;
    }
  }
  EXPECT_LT(banner.timer.seconds(), 30.0);
}

TEST(Acceptance, C3_ScalingIdentity) {
  Banner banner("criterion 3: scaling identity over (a,R,p,s) grid");
  double h = 1.0 / 32;
  for (double s : {0.25, 0.5, 0.75}) {
    for (double p : {2.0, 3.0}) {
      OperatorParams prm{.n = 1, .s = s, .p = p, .c_norm = 1.0};
      Grid g1 = grid_1d(-4.0, 4.0, h);
      Evaluator ev1(g1, prm);
      Field u = scaled(BarrierKind::bump1, {0.0}, 1.5, 1.0, g1);
      double base = ev1.eval_point(u, {0.0});
      for (double R : {1.0, 2.0}) {
        Grid gR = grid_1d(-4.0 * R, 4.0 * R, h * R);
        Evaluator evR(gR, prm);
        for (double a : {0.5, 1.0, 2.0}) {
          Field uR(gR, ExteriorRule::zero());
          for (std::size_t i = 0; i < uR.size(); ++i) uR[i] = a * u[i];
          double lhs = evR.eval_point(uR, {0.0});
          double rhs = std::pow(a, p - 1.0) / std::pow(R, s * p) * base;
          EXPECT_NEAR(lhs / rhs, 1.0, 1e-3)
              << "a=" << a << " R=" << R << " p=" << p << " s=" << s;
        }
      }
    }
  }
  EXPECT_LT(banner.timer.seconds(), 60.0);
}

TEST(Acceptance, C4_HalfLineAllenCahn) {
  Banner banner("criterion 4: Allen-Cahn half line, p in {2,3}");
  for (double p : {2.0, 3.0}) {
    const SolveResult& res = half_line_solution(p, false);
    const SolveResult& alt = half_line_solution(p, true);
    const Grid& g = res.u.grid();

    EXPECT_LE(res.final_residual, 1e-6);
    EXPECT_GT(res.min_interior, 1e-12) << "p=" << p;
    EXPECT_LT(res.max_interior, 1.0 - 1e-12) << "p=" << p;

    SuiteReport mono = check_monotonicity(res.u, DomainSpec::half_space(0, 0.0), {1.0}, 1e-6);
    EXPECT_TRUE(mono.passed()) << "p=" << p;

    EXPECT_GE(res.u[g.node_index_of({32.025})], 0.95) << "p=" << p;

    double tau0 = tau_zero_estimate(res.u, {1.0}, 2.0, 1e-8);
    EXPECT_DOUBLE_EQ(tau0, g.h) << "p=" << p;

    double sup = 0.0;
    for (std::size_t i = 0; i < res.u.size(); ++i)
      sup = std::max(sup, std::abs(res.u[i] - alt.u[i]));
    EXPECT_LE(sup, 1e-5) << "p=" << p;
  }
  EXPECT_LT(banner.timer.seconds(), 600.0);
}

TEST(Acceptance, C5_EigenSuite) {
  Banner banner("criterion 5: principal eigenpair vs dense solve + scaling");
  double h = 1.0 / 128;
  Grid g = grid_1d(-2.0, 2.0, h);
  OperatorParams prm{.n = 1, .s = 0.5, .p = 2.0, .c_norm = 1.0};
  SolveConfig cfg{.tol = 1e-10, .max_iters = 400000};
  EigenResult got = eigen_principal(prm, g, cfg);

  Evaluator ev(g, prm);
  auto inside = DomainSpec::ball({0.0}, 1.0).grid_nodes(g);
  Eigen::MatrixXd A(inside.size(), inside.size());
  std::vector<double> col;
  for (std::size_t j = 0; j < inside.size(); ++j) {
    Field basis(g, ExteriorRule::zero());
    basis[inside[j]] = 1.0;
    ev.eval_nodes(basis, inside, col);
    for (std::size_t i = 0; i < inside.size(); ++i)
      A(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = col[i];
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(0.5 * (A + A.transpose()));
  double lambda_dense = es.eigenvalues()(0);
  EXPECT_NEAR(got.lambda1 / lambda_dense, 1.0, 1e-6);

  std::size_t center = g.node_index_of({0.0});
  EXPECT_DOUBLE_EQ(got.eigenfield[center], 1.0);
  for (std::size_t k : inside) EXPECT_GT(got.eigenfield[k], 0.0);

  double R = 2.0;
  EigenResult big = eigen_principal(prm, grid_1d(-2.0 * R, 2.0 * R, h * R), cfg, R);
  EXPECT_NEAR(big.lambda1 * std::pow(R, prm.sp()) / got.lambda1, 1.0, 1e-2);
  EXPECT_LT(banner.timer.seconds(), 120.0);
}

TEST(Acceptance, C6_DensitySuite) {
  Banner banner("criterion 6: annulus density estimates");
  Rng rng(2024);
  int samples = 10000;

  DomainSpec lower = DomainSpec::complement_of(DomainSpec::half_space(1, 0.0));
  auto half = estimate_annulus_density(lower, {0.3, 0.7}, 1.0, 4, 12, samples, rng);
  EXPECT_LE(std::abs(half.liminf_estimate - 0.5), 3.0 * half.se_at_liminf);

  DomainSpec gaps = DomainSpec::complement_of(DomainSpec::perforated_slabs());
  auto slab = estimate_annulus_density(gaps, {0.3, 0.7}, 1.0, 0, 8, samples, rng);
  EXPECT_GE(slab.liminf_estimate, 0.4);

  DomainSpec one_ball = DomainSpec::ball({0.0, 0.0}, 1.0);
  auto ball = estimate_annulus_density(one_ball, {3.0, 0.0}, 1.0, 0, 8, samples, rng);
  for (int j = 6; j <= 8; ++j) {
    EXPECT_LE(ball.ratios[static_cast<std::size_t>(j)], 0.005) << "j=" << j;
  }
  EXPECT_LT(banner.timer.seconds(), 60.0);
}

TEST(Acceptance, C7_PerturbationSuite) {
  Banner banner("criterion 7: perturbation bound scalings on the converged field");
  const SolveResult& res = half_line_solution(2.0, false);
  const Grid& g = res.u.grid();
  Evaluator ev(g, OperatorParams{.n = 1, .s = 0.5, .p = 2.0, .c_norm = 1.0});
  Field bump = scaled(BarrierKind::bump1, {20.0}, 2.0, 1.0, g);
  SuiteReport rep = check_perturbation_bound(
      ev, res.u, bump, {20.025},
      {0.5, 0.25, 0.125, 0.0625, 0.03125, 0.015625, 0.0078125, 0.00390625},
      {0.2, 0.4, 0.8, 1.6});
  for (const auto& a : rep.assertions) {
    EXPECT_TRUE(a.pass) << a.label << ": measured " << a.measured << " " << a.cmp << " "
                        << a.threshold;
  }
  EXPECT_LT(banner.timer.seconds(), 300.0);
}

TEST(Acceptance, C8_HalfSpaceReduction2D) {
  Banner banner("criterion 8: 2D half-space reduction, 64x64 periodic strip");
  double h = 0.25;
  Grid g{.dim = 2, .origin = {0.5 * h, 0.5 * h}, .h = h, .counts = {64, 64}};
  ExteriorRule rule = ExteriorRule::periodic_tangential(0.0, kMuFar);
  Field init(g, rule, 0.0);
  Rng rng(2024);
  double width = g.extent(1);
  for (int i1 = 0; i1 < 64; ++i1) {
    for (int i0 = 0; i0 < 64; ++i0) {
      double x2 = g.origin[1] + h * i1;
      double ramp = std::clamp(x2 / width, 0.0, 1.0 - 1e-9);
      double noisy = ramp + rng.uniform(-0.1, 0.1);
      init[g.flat(i0, i1)] = std::clamp(noisy, 0.0, 1.0 - 1e-9);
    }
  }
  ProblemSpec prob{OperatorParams{.n = 2, .s = 0.5, .p = 2.0, .c_norm = 1.0},
                   g,
                   DomainSpec::half_space(1, 0.0),
                   make_allen_cahn(),
                   rule,
                   init,
                   QuadratureConfig{.tail_radius = 8.0}};
  SolveConfig cfg{.dt = 0.0, .tol = 1e-6, .max_iters = 100000};
  SolveResult res = solve_steady(prob, cfg);

  double variation = 0.0;
  for (int i1 = 0; i1 < 64; ++i1) {
    double lo = res.u[g.flat(0, i1)], hi = lo;
    for (int i0 = 1; i0 < 64; ++i0) {
      double v = res.u[g.flat(i0, i1)];
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
    variation = std::max(variation, hi - lo);
  }
  EXPECT_LE(variation, 1e-4);

  SuiteReport mono = check_monotonicity(res.u, prob.omega, {0.0, 1.0}, cfg.tol);
  EXPECT_TRUE(mono.passed());
  EXPECT_LT(banner.timer.seconds(), 1200.0);
}

TEST(Acceptance, C9_ThreadDeterminism) {
  Banner banner("criterion 9: byte-identical field CSVs for threads in {1,4}");
  const SolveResult& one = half_line_solution(2.0, false, 1);
  const SolveResult& four = half_line_solution(2.0, false, 4);
  std::ostringstream a, b;
  write_field_csv(a, one.u);
  write_field_csv(b, four.u);
  EXPECT_EQ(a.str(), b.str());
  // The p=3 run too, reusing the criterion-4 fields where possible.
  const SolveResult& p3_one = half_line_solution(3.0, false, 1);
  SolveConfig cfg{.dt = 0.0, .tol = 1e-6, .max_iters = 200000, .damping = 1.0, .threads = 4};
  SolveResult p3_four = solve_steady(half_line_problem(3.0, false), cfg);
  std::ostringstream c, d;
  write_field_csv(c, p3_one.u);
  write_field_csv(d, p3_four.u);
  EXPECT_EQ(c.str(), d.str());
}
