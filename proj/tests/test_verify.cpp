#include <gtest/gtest.h>

#include <cmath>

#include "fsp/verify.hpp"
#include "oracles.hpp"

using namespace fsp;

TEST(BruteForce, RadialFieldAndZeroField) {
  OccupancyGrid g(GridGeometry({5, 4, 3}, 0.5, {0, 0, 0}));
  g.set({1, 2, 0}, true);
  const EdfGrid e = brute_force_edf(g);
  for (std::size_t n = 0; n < g.geometry().size(); ++n) {
    const GridCoord c = g.geometry().coord(n);
    EXPECT_DOUBLE_EQ(e[n], g.geometry().center_distance(c, {1, 2, 0}));
  }
  g.fill_box({0, 0, 0}, {5, 4, 3}, true);
  const EdfGrid zero = brute_force_edf(g);
  for (double v : zero.values()) EXPECT_EQ(v, 0.0);
  EXPECT_THROW(brute_force_edf(OccupancyGrid(GridGeometry({2, 2, 2}, 1, {0, 0, 0}))), Error);
}

TEST(BruteForce, AgreesWithIndependentOracle) {
  const OccupancyGrid g = oracle::random_occupancy({7, 9, 5}, 0.3, 0.05, 8);
  const auto expect = oracle::nearest_obstacle_distance(g);
  const EdfGrid e = brute_force_edf(g);
  for (std::size_t n = 0; n < expect.size(); ++n) EXPECT_NEAR(e[n], expect[n], 1e-12);
}

TEST(Suites, EdfExactnessSmall) {
  const SuiteResult r = check_edf_exactness(8, 12, 1);
  EXPECT_EQ(r.cases, 8u);
  EXPECT_TRUE(r.passed()) << r.to_json().dump();
}

TEST(Suites, LipschitzSmall) {
  const SuiteResult r = check_lipschitz(2, 16, 1);
  EXPECT_GT(r.cases, 0u);
  EXPECT_TRUE(r.passed()) << r.to_json().dump();
}

TEST(Voxelize, SphereAndBoxCounts) {
  const HhLattice lat{40, 0.25};
  // Unit sphere at 0.25 spacing: lattice points with i^2+j^2+k^2 <= 16.
  int expect = 0;
  for (int i = -4; i <= 4; ++i)
    for (int j = -4; j <= 4; ++j)
      for (int k = -4; k <= 4; ++k) expect += i * i + j * j + k * k <= 16;
  EXPECT_EQ(voxelize({}, lat).occupied_count(), static_cast<std::size_t>(expect));
  ConvexObstacle box;
  box.shape = ConvexObstacle::Shape::box;
  EXPECT_EQ(voxelize(box, lat).occupied_count(), 9u * 7u * 5u);
}

TEST(Suites, HhBoundsSmall) {
  ConvexObstacle box;
  box.shape = ConvexObstacle::Shape::box;
  for (const ConvexObstacle& o : {ConvexObstacle{}, box}) {
    const SuiteResult r = check_hh_bounds(o, 150, 3);
    EXPECT_EQ(r.cases, 150u);
    EXPECT_TRUE(r.passed()) << r.to_json().dump();
  }
}

TEST(Triangle, SymmetricExample) {
  TriangleCase t;
  t.P = t.C = t.N = 3.0;
  t.L = t.d = t.a = 1.0;
  EXPECT_DOUBLE_EQ(t.g1(), 1.0 + 2.0 / 6.0);
  EXPECT_DOUBLE_EQ(t.g2(), 2.0 + 4.0 / 6.0);
  EXPECT_LT(t.g1(), t.g2());
}

TEST(Triangle, PremiseChecks) {
  TriangleCase t{3, 3, 3, 1.5, 1.2, 1.0};
  EXPECT_TRUE(t.premises_hold());
  t.N = 1.0;  // |P - N| = 2 >= L
  EXPECT_FALSE(t.premises_hold());
  t = {3, 3, 3, 2.2, 1.2, 1.0};  // L >= d + a
  EXPECT_FALSE(t.premises_hold());
}

// Violations only appear when s_n lies between s_p and s_c.
TEST(Triangle, SampledFromGridsFailsOnlyWhenSteppingBack) {
  const SuiteResult r = check_triangle_inequality(200000, 0);
  EXPECT_EQ(r.cases, 200000u);
  EXPECT_EQ(r.details["counterexamples_with_d_above_L"], r.failures) << r.to_json().dump();
  if (!r.passed()) EXPECT_GT(r.first_counterexample["d"].get<double>(), r.first_counterexample["L"].get<double>());
}

TEST(Triangle, KnownBacktrackingCounterexample) {
  // s_p, s_n, s_c collinear along a face diagonal; s_p and s_n touch obstacles.
  TriangleCase t{0.2, std::sqrt(0.2), 0.2, 0.2 * std::sqrt(2.0), 0.4 * std::sqrt(2.0), 0.2 * std::sqrt(2.0)};
  EXPECT_TRUE(t.premises_hold());
  EXPECT_GT(t.g1(), t.g2());
}

TEST(Triangle, BrokenPremisesCanBreakTheInequality) {
  const SuiteResult r = probe_triangle_premises(200000, 0);
  EXPECT_GT(r.failures, 0u);
  EXPECT_FALSE(r.first_counterexample.is_null());
}

TEST(Quality, PlanarSelection) {
  // Obstacle at +x: the retreat is -x; goal along +y blends to the (-1,1) diagonal.
  std::array<double, 8> d{};
  for (int n = 0; n < 8; ++n) d[n] = std::hypot(kPlanarOffsets[n][0] - 3.0, kPlanarOffsets[n][1]);
  const auto one = choose_neighbours_2d(3.0, d, 0.0, 5.0, 1);
  ASSERT_EQ(one.size(), 1u);
  EXPECT_EQ(one[0], 3);
  EXPECT_EQ(choose_neighbours_2d(3.0, d, 0.0, 5.0, 8).size(), 8u);
}

TEST(Quality, AllNeighboursAlwaysScoreFull) {
  QualityConfig cfg;
  cfg.k_values = {8};
  cfg.step_degrees = 30.0;
  for (const QualityRow& row : quality_study_2d(cfg)) {
    EXPECT_EQ(row.score_near, 100.0);
    EXPECT_EQ(row.score_far, 100.0);
  }
}

TEST(Quality, RejectsStepThatDoesNotDivideCircle) {
  QualityConfig cfg;
  cfg.step_degrees = 7.0;
  EXPECT_THROW(quality_study_2d(cfg), Error);
}
