#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "fplap/common/rng.hpp"
#include "fplap/fplap.hpp"

using namespace fplap;

TEST(Params, Validation) {
  OperatorParams ok{.n = 1, .s = 0.5, .p = 2.0, .c_norm = 1.0};
  EXPECT_NO_THROW(ok.validate());
  EXPECT_THROW((OperatorParams{.n = 3, .s = 0.5, .p = 2.0}.validate()), invalid_argument_error);
  EXPECT_THROW((OperatorParams{.n = 1, .s = 1.5, .p = 2.0}.validate()), invalid_argument_error);
  EXPECT_THROW((OperatorParams{.n = 1, .s = 0.0, .p = 2.0}.validate()), invalid_argument_error);
  EXPECT_THROW((OperatorParams{.n = 1, .s = 0.5, .p = 1.5}.validate()), invalid_argument_error);
  EXPECT_THROW((OperatorParams{.n = 1, .s = 0.5, .p = 2.0, .c_norm = 0.0}.validate()),
               invalid_argument_error);
}

TEST(Grid, IndexingRoundTrip) {
  Grid g{.dim = 2, .origin = {-1.0, 0.5}, .h = 0.25, .counts = {8, 5}};
  g.validate();
  for (std::size_t i = 0; i < g.size(); ++i) {
    EXPECT_EQ(g.node_index_of(g.node(i)), i);
  }
  EXPECT_EQ(g.node_index_of({-1.0 + 0.125, 0.5}), Grid::npos);  // off lattice
  EXPECT_EQ(g.node_index_of({-2.0, 0.5}), Grid::npos);          // outside
}

TEST(Grid, Invariants) {
  EXPECT_THROW((Grid{.dim = 1, .origin = {0, 0}, .h = 0.0, .counts = {8, 1}}.validate()),
               invalid_argument_error);
  EXPECT_THROW((Grid{.dim = 1, .origin = {0, 0}, .h = 1.0, .counts = {2, 1}}.validate()),
               invalid_argument_error);
  // r_trunc below half the diameter is rejected, at or above accepted.
  Grid g{.dim = 1, .origin = {0, 0}, .h = 1.0, .counts = {10, 1}, .r_trunc = 1.0};
  EXPECT_THROW(g.validate(), invalid_argument_error);
  g.r_trunc = 5.0;
  EXPECT_NO_THROW(g.validate());
}

TEST(Field, TotalEvaluation) {
  Grid g{.dim = 1, .origin = {0.0, 0.0}, .h = 0.5, .counts = {5, 1}};
  Field u(g, ExteriorRule::constant(7.0));
  for (std::size_t i = 0; i < u.size(); ++i) u[i] = static_cast<double>(i);
  // Exact at nodes, linear between, rule outside.
  EXPECT_DOUBLE_EQ(u.value_at({1.0}), 2.0);
  EXPECT_DOUBLE_EQ(u.value_at({1.25}), 2.5);
  EXPECT_DOUBLE_EQ(u.value_at({100.0}), 7.0);
  EXPECT_DOUBLE_EQ(u.value_at({-100.0}), 7.0);
}

TEST(Field, InterpolationPreservesBounds) {
  Grid g{.dim = 2, .origin = {0.0, 0.0}, .h = 0.5, .counts = {6, 6}};
  Field u(g, ExteriorRule::zero());
  Rng rng(11);
  for (std::size_t i = 0; i < u.size(); ++i) u[i] = rng.uniform(-3.0, 3.0);
  double lo = u.min_value(), hi = u.max_value();
  for (int k = 0; k < 2000; ++k) {
    Point x{rng.uniform(g.box_lo(0), g.box_hi(0)), rng.uniform(g.box_lo(1), g.box_hi(1))};
    double v = u.value_at(x);
    EXPECT_GE(v, lo - 1e-12);
    EXPECT_LE(v, hi + 1e-12);
  }
}

TEST(Field, PeriodicWrap) {
  Grid g{.dim = 2, .origin = {0.25, 0.25}, .h = 0.5, .counts = {4, 4}};
  Field u(g, ExteriorRule::periodic_tangential(0.0, 9.0));
  for (std::size_t i = 0; i < u.size(); ++i) u[i] = static_cast<double>(i);
  // Tangential wrap by a whole period reproduces node values exactly.
  for (int i1 = 0; i1 < 4; ++i1) {
    for (int i0 = 0; i0 < 4; ++i0) {
      EXPECT_EQ(u.node_or_exterior(i0 + 4, i1), u[g.flat(i0, i1)]);
      EXPECT_EQ(u.node_or_exterior(i0 - 8, i1), u[g.flat(i0, i1)]);
    }
  }
  EXPECT_EQ(u.node_or_exterior(1, -1), 0.0);
  EXPECT_EQ(u.node_or_exterior(1, 4), 9.0);
}

TEST(ExteriorRule, SerializeRoundTrip) {
  for (const ExteriorRule& r :
       {ExteriorRule::zero(), ExteriorRule::constant(0.125),
        ExteriorRule::axis_step(0, 0.25, -1.0, 0.75), ExteriorRule::periodic_tangential(0.0, 1.0)}) {
    ExteriorRule back = ExteriorRule::deserialize(r.serialize());
    EXPECT_EQ(back.serialize(), r.serialize());
  }
  EXPECT_THROW(ExteriorRule::deserialize("prescribed custom 0 0"), invalid_argument_error);
  EXPECT_THROW(ExteriorRule::deserialize("whatever"), invalid_argument_error);
}

TEST(Csv, BitExactRoundTrip1D) {
  Grid g{.dim = 1, .origin = {0.025, 0.0}, .h = 0.05, .counts = {40, 1}};
  Field u(g, ExteriorRule::axis_step(0, 1.0, 0.0, 1.0 - 1e-6));
  Rng rng(3);
  for (std::size_t i = 0; i < u.size(); ++i) u[i] = rng.uniform(-1.0, 1.0) * std::exp(rng.uniform(-30.0, 30.0));
  std::stringstream ss;
  write_field_csv(ss, u);
  Field back = read_field_csv(ss);
  ASSERT_EQ(back.size(), u.size());
  for (std::size_t i = 0; i < u.size(); ++i) {
    EXPECT_EQ(back[i], u[i]) << "node " << i;  // bitwise
  }
  EXPECT_EQ(back.rule().serialize(), u.rule().serialize());
  EXPECT_EQ(back.grid().h, g.h);
  EXPECT_EQ(back.grid().origin[0], g.origin[0]);
}

TEST(Csv, BitExactRoundTrip2D) {
  Grid g{.dim = 2, .origin = {0.125, 0.125}, .h = 0.25, .counts = {5, 7}};
  Field u(g, ExteriorRule::periodic_tangential(0.0, 0.5));
  Rng rng(5);
  for (std::size_t i = 0; i < u.size(); ++i) u[i] = rng.uniform(-1e10, 1e10);
  std::stringstream ss;
  write_field_csv(ss, u);
  Field back = read_field_csv(ss);
  for (std::size_t i = 0; i < u.size(); ++i) EXPECT_EQ(back[i], u[i]);
}

TEST(Csv, RejectsTruncatedInput) {
  std::stringstream ss("# 1, 0.5, 0.0, 4, 2.0, zero\n0, 1.0\n1, 2.0\n");
  EXPECT_THROW(read_field_csv(ss), invalid_argument_error);  // nodes 2,3 missing
}

TEST(Domain, MembershipMatchesDefiningInequality) {
  Rng rng(17);
  DomainSpec hs = DomainSpec::half_space(1, 0.25);
  DomainSpec ball = DomainSpec::ball({1.0, -1.0}, 2.0);
  DomainSpec strip = DomainSpec::strip(3.0);
  DomainSpec slabs = DomainSpec::perforated_slabs();
  DomainSpec shells = DomainSpec::perforated_shells();
  int n = 200000;
  int agree_hs = 0, agree_ball = 0, agree_strip = 0, agree_slabs = 0, agree_shells = 0;
  for (int k = 0; k < n; ++k) {
    Point x{rng.uniform(-10.0, 10.0), rng.uniform(-10.0, 10.0)};
    agree_hs += hs.contains(x) == (x[1] > 0.25);
    double r = std::hypot(x[0] - 1.0, x[1] + 1.0);
    agree_ball += ball.contains(x) == (r < 2.0);
    agree_strip += strip.contains(x) == (x[1] > 0.0 && x[1] < 3.0);
    double m2 = std::fmod(x[1], 2.0);
    if (m2 < 0) m2 += 2.0;
    agree_slabs += slabs.contains(x) == (m2 > 0.0 && m2 < 1.0);
    double rr = std::hypot(x[0], x[1]);
    double mr = std::fmod(rr, 2.0);
    agree_shells += shells.contains(x) == (mr > 0.0 && mr < 1.0);
  }
  for (int agree : {agree_hs, agree_ball, agree_strip, agree_slabs, agree_shells}) {
    EXPECT_GE(agree, static_cast<int>(0.999 * n));
  }
}

TEST(Domain, BoundaryDistance) {
  DomainSpec hs = DomainSpec::half_space(0, 0.0);
  EXPECT_DOUBLE_EQ(hs.boundary_distance({3.0}), 3.0);
  EXPECT_DOUBLE_EQ(hs.boundary_distance({-2.0}), 2.0);
  DomainSpec ball = DomainSpec::ball({0.0}, 1.0);
  EXPECT_DOUBLE_EQ(ball.boundary_distance({0.25}), 0.75);
  EXPECT_DOUBLE_EQ(ball.boundary_distance({2.0}), 1.0);
  DomainSpec slabs = DomainSpec::perforated_slabs();
  EXPECT_DOUBLE_EQ(slabs.boundary_distance({0.0, 2.25}), 0.25);
  EXPECT_DOUBLE_EQ(slabs.boundary_distance({0.0, 2.75}), 0.25);
  DomainSpec comp = DomainSpec::complement_of(slabs);
  EXPECT_FALSE(comp.contains({0.0, 2.5}));
  EXPECT_TRUE(comp.contains({0.0, 1.5}));
}

TEST(Domain, EpigraphFamily) {
  DomainSpec epi = DomainSpec::epigraph([](const Point& t) { return std::sin(t[0]); });
  EXPECT_TRUE(epi.contains({0.0, 0.5}));
  EXPECT_FALSE(epi.contains({0.0, -0.5}));
  EXPECT_NEAR(epi.boundary_distance({0.0, 0.5}), 0.5, 1e-15);
}

TEST(Nonlinearity, AllenCahn) {
  Nonlinearity nl = make_allen_cahn();
  EXPECT_DOUBLE_EQ(nl.f(1.0), 0.0);
  EXPECT_DOUBLE_EQ(nl.f(0.5), 0.375);
  EXPECT_DOUBLE_EQ(nl.mu, 1.0);
  EXPECT_DOUBLE_EQ(nl.t0, 0.5);
  EXPECT_NEAR(nl.t1, 0.57735026918962584, 1e-15);  // 1/sqrt(3), where f' changes sign
  EXPECT_DOUBLE_EQ(nl.delta0, 0.75);
  // Independent sampling oracle for the admissible parameters:
  // f(t)/t = 1 - t^2 >= 3/4 on (0, t0], and f' = 1 - 3 t^2 <= 0 on [t1, mu].
  for (int k = 1; k <= 5000; ++k) {
    double t = nl.t0 * k / 5000.0;
    EXPECT_GE(nl.f(t) / t, nl.delta0 - 1e-12);
  }
  for (int k = 0; k <= 5000; ++k) {
    double t = nl.t1 + (nl.mu - nl.t1) * k / 5000.0;
    EXPECT_LE(1.0 - 3.0 * t * t, 1e-12);
  }
  EXPECT_TRUE(validate_nonlinearity(nl).all_pass());
}

TEST(Nonlinearity, FisherKpp) {
  Nonlinearity nl = make_fisher_kpp();
  EXPECT_DOUBLE_EQ(nl.f(1.0), 0.0);
  EXPECT_DOUBLE_EQ(nl.f(0.5), 0.25);
  EXPECT_DOUBLE_EQ(nl.t1, 0.5);
  EXPECT_DOUBLE_EQ(nl.t0, 0.25);
  EXPECT_DOUBLE_EQ(nl.delta0, 0.75);
  EXPECT_TRUE(validate_nonlinearity(nl).all_pass());
}

TEST(Nonlinearity, DetectsViolations) {
  // f < 0 on (0, mu): condition (a) fails, and the worst sample sits there.
  Nonlinearity neg = make_allen_cahn();
  neg.f = [](double t) { return -t; };
  auto rep = validate_nonlinearity(neg);
  EXPECT_FALSE(rep.pass_a);
  EXPECT_GT(rep.worst_a, 0.0);
  EXPECT_LT(rep.worst_a, 1.0);

  // delta0 = 2 cannot hold since f(t)/t = 1 - t^2 <= 1 < 2.
  Nonlinearity greedy = make_allen_cahn();
  greedy.delta0 = 2.0;
  EXPECT_FALSE(validate_nonlinearity(greedy).pass_b);

  // Increasing f on (t1, mu): condition (c) fails.
  Nonlinearity inc = make_allen_cahn();
  inc.f = [](double t) { return t; };
  EXPECT_FALSE(validate_nonlinearity(inc).pass_c);
}
