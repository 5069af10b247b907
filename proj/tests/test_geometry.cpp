#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "fuzzybm/errors.hpp"
#include "fuzzybm/generators.hpp"
#include "fuzzybm/geometry.hpp"

using namespace fuzzybm;

namespace {

GridPtr grid2(std::size_t m = 128) { return make_direction_grid(2, m, 7); }

// Brute-force support of the Minkowski sum: max over all vertex pairs.
double pair_sum_support(const ConvexBody& a, const ConvexBody& b, const Point& u) {
  double best = -INFINITY;
  for (const auto& p : a.vertices()) {
    for (const auto& q : b.vertices()) best = std::max(best, u[0] * (p[0] + q[0]) + u[1] * (p[1] + q[1]));
  }
  return best;
}

double vertex_support(const std::vector<Point>& vs, double ux, double uy) {
  double best = -INFINITY;
  for (const auto& v : vs) best = std::max(best, ux * v[0] + uy * v[1]);
  return best;
}

// Dense angular sweep of the support difference, independent of the grid.
double dense_hausdorff(const ConvexBody& a, const ConvexBody& b, int steps = 200000) {
  double best = 0.0;
  for (int k = 0; k < steps; ++k) {
    const double th = 2.0 * std::numbers::pi * k / steps;
    const double ux = std::cos(th), uy = std::sin(th);
    best = std::max(best, std::abs(vertex_support(a.vertices(), ux, uy) - vertex_support(b.vertices(), ux, uy)));
  }
  return best;
}

}  // namespace

TEST(DirectionGrid, OneDimensionalIsPlusMinusOne) {
  const GridPtr g = make_direction_grid(1, 2, 0);
  ASSERT_EQ(g->size(), 2u);
  EXPECT_EQ(g->direction(0), Point{1.0});
  EXPECT_EQ(g->direction(1), Point{-1.0});
}

TEST(DirectionGrid, MinimalGridIsTheSignedAxes) {
  const GridPtr g = make_direction_grid(2, 4, 7);
  ASSERT_EQ(g->size(), 4u);
  EXPECT_EQ(g->direction(g->axis_index(0, true)), (Point{1.0, 0.0}));
  EXPECT_EQ(g->direction(g->axis_index(0, false)), (Point{-1.0, 0.0}));
  EXPECT_EQ(g->direction(g->axis_index(1, true)), (Point{0.0, 1.0}));
  EXPECT_EQ(g->direction(g->axis_index(1, false)), (Point{0.0, -1.0}));
}

TEST(DirectionGrid, DeterministicAndShared) {
  const GridPtr a = make_direction_grid(2, 128, 7);
  const GridPtr b = make_direction_grid(2, 128, 7);
  EXPECT_EQ(a->directions(), b->directions());
  EXPECT_EQ(a.get(), b.get());
  const DirectionGrid fresh(2, 128, 7);
  EXPECT_EQ(fresh.directions(), a->directions());
}

TEST(DirectionGrid, UnitNormDistinctAndClosedUnderNegation) {
  for (int dim : {2, 3, 4}) {
    const GridPtr g = make_direction_grid(dim, 64, 11);
    ASSERT_EQ(g->size(), 64u);
    for (std::size_t i = 0; i < g->size(); ++i) {
      EXPECT_NEAR(euclidean_norm(g->direction(i)), 1.0, 1e-12);
      const Point& u = g->direction(i);
      const Point& v = g->direction(g->antipode(i));
      for (int k = 0; k < dim; ++k) EXPECT_EQ(v[k], -u[k]);
      for (std::size_t j = 0; j < i; ++j) EXPECT_NE(g->direction(j), u);
    }
  }
}

TEST(DirectionGrid, RefinementIsSuperset) {
  const GridPtr coarse = make_direction_grid(2, 128, 3);
  const GridPtr fine = make_direction_grid(2, 512, 3);
  for (std::size_t i = 0; i < coarse->size(); ++i) EXPECT_EQ(coarse->direction(i), fine->direction(i));
  const GridPtr c3 = make_direction_grid(3, 20, 3);
  const GridPtr f3 = make_direction_grid(3, 60, 3);
  for (std::size_t i = 0; i < c3->size(); ++i) EXPECT_EQ(c3->direction(i), f3->direction(i));
}

TEST(DirectionGrid, RejectsBadCounts) {
  EXPECT_THROW(make_direction_grid(2, 3, 0), InvalidArgument);
  EXPECT_THROW(make_direction_grid(3, 5, 0), InvalidArgument);
  EXPECT_THROW(make_direction_grid(2, 7, 0), InvalidArgument);  // unpaired direction
  EXPECT_THROW(make_direction_grid(0, 4, 0), InvalidArgument);
  EXPECT_THROW(grid2()->direction(128), InvalidArgument);
}

TEST(DirectionGrid, IdRoundTrip) {
  const GridPtr g = make_direction_grid(3, 30, 99);
  EXPECT_EQ(g->id(), "d3-m30-s99");
  EXPECT_EQ(grid_from_id(g->id()).get(), g.get());
  EXPECT_THROW(grid_from_id("nonsense"), InvalidArgument);
}

TEST(Support, Examples) {
  const GridPtr g = grid2();
  const ConvexBody disk = ConvexBody::from_support(g, std::vector<double>(g->size(), 1.0));
  for (std::size_t i = 0; i < g->size(); ++i) EXPECT_EQ(disk.support(i), 1.0);

  const Point a{0.3, -1.7};
  const ConvexBody s = ConvexBody::singleton(g, a);
  for (std::size_t i = 0; i < g->size(); ++i) {
    EXPECT_DOUBLE_EQ(s.support(i), g->direction(i)[0] * a[0] + g->direction(i)[1] * a[1]);
  }
  const ConvexBody sq = ConvexBody::box(g, {0, 0}, {1, 1});
  EXPECT_EQ(sq.support(g->axis_index(0, true)), 1.0);
  EXPECT_THROW(sq.support(g->size()), InvalidArgument);
}

TEST(Support, VertexDerivedSupportIsExactMaximum) {
  const GridPtr g = grid2();
  Rng rng(1);
  for (int k = 0; k < 50; ++k) {
    const ConvexBody p = random_polytope(g, rng);
    for (std::size_t i = 0; i < g->size(); ++i) {
      const Point& u = g->direction(i);
      EXPECT_EQ(p.support(i), vertex_support(p.vertices(), u[0], u[1]));
    }
  }
}

TEST(ConvexBody, RejectsEmptyAndNonFinite) {
  const GridPtr g = grid2();
  EXPECT_THROW(ConvexBody::from_vertices(g, {}), InvalidArgument);
  std::vector<double> bad(g->size(), 1.0);
  bad[3] = INFINITY;
  EXPECT_THROW(ConvexBody::from_support(g, bad), InvalidArgument);
  EXPECT_THROW(ConvexBody::from_support(g, std::vector<double>(g->size() - 1, 1.0)), InvalidArgument);
  // s(u) + s(-u) < 0 describes no set.
  EXPECT_THROW(ConvexBody::from_support(g, std::vector<double>(g->size(), -1.0)), InvalidArgument);
  EXPECT_THROW(ConvexBody::ball(g, {0, 0}, 1.0).vertices(), Unsupported);
}

TEST(ConvexBody, HullDropsInteriorPoints) {
  const GridPtr g = grid2();
  const ConvexBody b = ConvexBody::from_vertices(g, {{0, 0}, {1, 0}, {1, 1}, {0, 1}, {0.5, 0.5}, {0.2, 0.7}});
  EXPECT_EQ(b.vertices().size(), 4u);
}

TEST(Minkowski, IdentityAndBoxes) {
  const GridPtr g = grid2();
  Rng rng(2);
  const ConvexBody a = random_polytope(g, rng);
  const ConvexBody sum = minkowski_sum(a, ConvexBody::origin(g));
  EXPECT_EQ(hausdorff(sum, a), 0.0);

  const ConvexBody sq = ConvexBody::box(g, {0, 0}, {1, 1});
  const ConvexBody two = ConvexBody::box(g, {0, 0}, {2, 2});
  EXPECT_LE(hausdorff(minkowski_sum(sq, sq), two), 1e-12);
  EXPECT_EQ(minkowski_sum(sq, sq).vertices().size(), 4u);
}

TEST(Minkowski, MatchesPairwiseSumOracle) {
  const GridPtr g = grid2();
  Rng rng(3);
  for (int k = 0; k < 100; ++k) {
    const ConvexBody a = random_polytope(g, rng);
    const ConvexBody b = random_polytope(g, rng);
    const ConvexBody s = minkowski_sum(a, b);
    for (std::size_t i = 0; i < g->size(); ++i) {
      EXPECT_NEAR(s.support(i), pair_sum_support(a, b, g->direction(i)), 1e-12);
      EXPECT_NEAR(s.support(i), a.support(i) + b.support(i), 1e-12);
    }
  }
}

TEST(Minkowski, SupportOnlyBodiesAdd) {
  const GridPtr g = grid2();
  const ConvexBody s = minkowski_sum(ConvexBody::ball(g, {0, 0}, 1.0), ConvexBody::box(g, {0, 0}, {1, 1}));
  EXPECT_FALSE(s.has_vertices());
  EXPECT_DOUBLE_EQ(s.support(g->axis_index(0, true)), 2.0);
}

TEST(Minkowski, GridMismatchThrows) {
  const ConvexBody a = ConvexBody::origin(grid2(128));
  const ConvexBody b = ConvexBody::origin(grid2(64));
  EXPECT_THROW(minkowski_sum(a, b), InvalidArgument);
  EXPECT_THROW(hausdorff(a, b), InvalidArgument);
  EXPECT_THROW(contains(a, b), InvalidArgument);
}

TEST(Scale, Examples) {
  const GridPtr g = grid2();
  Rng rng(4);
  const ConvexBody a = random_polytope(g, rng);
  EXPECT_EQ(hausdorff(scale(1.0, a), a), 0.0);
  EXPECT_EQ(norm(scale(0.0, a)), 0.0);

  const GridPtr g1 = make_direction_grid(1, 2, 0);
  const ConvexBody r = scale(-1.0, ConvexBody::from_vertices(g1, {{0.0}, {1.0}}));
  EXPECT_EQ(r.support(0), 0.0);   // max of [-1, 0]
  EXPECT_EQ(r.support(1), 1.0);   // -min
}

TEST(Scale, NegativeUsesAntipodes) {
  const GridPtr g = grid2();
  Rng rng(5);
  const ConvexBody a = random_polytope(g, rng);
  const ConvexBody ball = ConvexBody::ball(g, {0.5, -0.25}, 0.7);
  for (const ConvexBody& body : {a, ball}) {
    const ConvexBody r = scale(-2.5, body);
    for (std::size_t i = 0; i < g->size(); ++i) {
      EXPECT_NEAR(r.support(i), 2.5 * body.support(g->antipode(i)), 1e-12);
    }
  }
}

TEST(Scale, PositiveHomogeneity) {
  const GridPtr g = grid2();
  Rng rng(6);
  std::uniform_real_distribution<double> lam(0.0, 5.0);
  for (int k = 0; k < 100; ++k) {
    const ConvexBody a = random_polytope(g, rng);
    const double l = lam(rng);
    const ConvexBody s = scale(l, a);
    for (std::size_t i = 0; i < g->size(); ++i) EXPECT_NEAR(s.support(i), l * a.support(i), 1e-12);
  }
}

TEST(Hausdorff, Examples) {
  const GridPtr g = grid2();
  Rng rng(7);
  const ConvexBody a = random_polytope(g, rng);
  EXPECT_EQ(hausdorff(a, a), 0.0);

  const Point x{3.0, 4.0};
  const double r = hausdorff(ConvexBody::origin(g), ConvexBody::singleton(g, x));
  double max_proj = 0.0;
  for (const auto& u : g->directions()) max_proj = std::max(max_proj, std::abs(u[0] * x[0] + u[1] * x[1]));
  EXPECT_DOUBLE_EQ(r, max_proj);
  EXPECT_LE(r, 5.0);
  // On-grid direction: distance is the full norm.
  EXPECT_DOUBLE_EQ(hausdorff(ConvexBody::origin(g), ConvexBody::singleton(g, {0.0, -2.0})), 2.0);
}

TEST(Hausdorff, MetricAxioms) {
  const GridPtr g = grid2();
  Rng rng(8);
  for (int k = 0; k < 100; ++k) {
    const ConvexBody a = random_polytope(g, rng);
    const ConvexBody b = random_polytope(g, rng);
    const ConvexBody c = random_polytope(g, rng);
    EXPECT_EQ(hausdorff(a, b), hausdorff(b, a));
    EXPECT_LE(hausdorff(a, c), hausdorff(a, b) + hausdorff(b, c) + 1e-12);
    EXPECT_GT(hausdorff(a, b), 0.0);
  }
}

TEST(Hausdorff, TranslationIdentity) {
  const GridPtr g = grid2();
  Rng rng(9);
  for (int k = 0; k < 50; ++k) {
    const ConvexBody a = random_polytope(g, rng);
    const Point x = random_point(2, rng, 3.0);
    double expect = 0.0;
    for (const auto& u : g->directions()) expect = std::max(expect, std::abs(u[0] * x[0] + u[1] * x[1]));
    EXPECT_NEAR(hausdorff(a, minkowski_sum(a, ConvexBody::singleton(g, x))), expect, 1e-12);
    EXPECT_NEAR(hausdorff(a, translate(a, x)), expect, 1e-12);
  }
}

TEST(HausdorffExact, Examples) {
  const GridPtr g = grid2();
  EXPECT_DOUBLE_EQ(hausdorff_exact_polygon(ConvexBody::box(g, {0, 0}, {1, 1}), ConvexBody::origin(g)),
                   std::sqrt(2.0));
  const GridPtr g1 = make_direction_grid(1, 2, 0);
  EXPECT_DOUBLE_EQ(hausdorff_exact_polygon(ConvexBody::from_vertices(g1, {{0.0}, {1.0}}),
                                           ConvexBody::from_vertices(g1, {{0.0}, {2.0}})),
                   1.0);
  const ConvexBody tri = ConvexBody::from_vertices(g, {{0, 0}, {2, 0}, {0.5, 1.5}});
  const Point x{0.7, -1.1};
  EXPECT_NEAR(hausdorff_exact_polygon(tri, translate(tri, x)), euclidean_norm(x), 1e-12);
}

TEST(HausdorffExact, Errors) {
  const GridPtr g3 = make_direction_grid(3, 6, 0);
  EXPECT_THROW(hausdorff_exact_polygon(ConvexBody::origin(g3), ConvexBody::origin(g3)), Unsupported);
  const GridPtr g = grid2();
  EXPECT_THROW(hausdorff_exact_polygon(ConvexBody::ball(g, {0, 0}, 1), ConvexBody::origin(g)), Unsupported);
}

TEST(HausdorffExact, AgreesWithDenseSupportSweep) {
  const GridPtr g = grid2(512);
  Rng rng(10);
  for (int k = 0; k < 20; ++k) {
    const ConvexBody a = random_polytope(g, rng);
    const ConvexBody b = random_polytope(g, rng);
    const double exact = hausdorff_exact_polygon(a, b);
    const double dense = dense_hausdorff(a, b);
    // Support functions are R-Lipschitz in the angle, so the sweep misses the
    // maximum by at most (R_a + R_b) * step.
    double ra = 0.0, rb = 0.0;
    for (const auto& v : a.vertices()) ra = std::max(ra, euclidean_norm(v));
    for (const auto& v : b.vertices()) rb = std::max(rb, euclidean_norm(v));
    EXPECT_LE(dense, exact + 1e-12);
    EXPECT_GE(dense, exact - (ra + rb) * 2.0 * std::numbers::pi / 200000);
  }
}

TEST(HausdorffExact, NestedAndOverlappingPolygons) {
  const GridPtr g = grid2(512);
  const ConvexBody big = ConvexBody::box(g, {-2, -2}, {2, 2});
  const ConvexBody small = ConvexBody::box(g, {-1, -1}, {1, 1});
  EXPECT_NEAR(hausdorff_exact_polygon(big, small), std::sqrt(2.0), 1e-12);
  EXPECT_NEAR(dense_hausdorff(big, small), std::sqrt(2.0), 1e-6);
}

TEST(Hausdorff, GridIsLowerBoundAndRefinementMonotone) {
  const GridPtr coarse = grid2(128);
  const GridPtr fine = grid2(512);
  Rng rng(11);
  for (int k = 0; k < 100; ++k) {
    const ConvexBody a = random_polytope(fine, rng);
    const ConvexBody b = random_polytope(fine, rng);
    const double exact = hausdorff_exact_polygon(a, b);
    const double hf = hausdorff(a, b);
    const double hc = hausdorff(ConvexBody::from_vertices(coarse, a.vertices()),
                                ConvexBody::from_vertices(coarse, b.vertices()));
    EXPECT_LE(hf, exact + 1e-12);
    EXPECT_LE(hc, hf);
    EXPECT_LE(exact - hf, 0.02 * exact);
  }
}

TEST(Contains, Examples) {
  const GridPtr g = grid2();
  const ConvexBody sq = ConvexBody::box(g, {0, 0}, {1, 1});
  EXPECT_TRUE(contains(sq, sq));
  EXPECT_TRUE(contains(ConvexBody::box(g, {0, 0}, {2, 2}), sq));
  const GridPtr g1 = make_direction_grid(1, 2, 0);
  EXPECT_FALSE(contains(ConvexBody::origin(g1), ConvexBody::from_vertices(g1, {{0.0}, {1.0}})));
}

TEST(Norm, Examples) {
  const GridPtr g = grid2();
  EXPECT_EQ(norm(ConvexBody::origin(g)), 0.0);
  EXPECT_DOUBLE_EQ(norm(ConvexBody::singleton(g, {-3.0, 0.0})), 3.0);
  const ConvexBody sq = ConvexBody::box(g, {-1, -1}, {1, 1});
  EXPECT_DOUBLE_EQ(hausdorff_exact_polygon(sq, ConvexBody::origin(g)), std::sqrt(2.0));
  EXPECT_GE(norm(sq), 1.0);
  EXPECT_LE(norm(sq), std::sqrt(2.0) + 1e-12);
}

TEST(ConvexBody, HigherDimensionalBoxes) {
  const GridPtr g = make_direction_grid(3, 40, 5);
  const ConvexBody b = ConvexBody::box(g, {0, 0, 0}, {1, 2, 3});
  EXPECT_EQ(b.vertices().size(), 8u);
  for (std::size_t i = 0; i < g->size(); ++i) {
    const Point& u = g->direction(i);
    const double expect = std::max(0.0, u[0]) + 2 * std::max(0.0, u[1]) + 3 * std::max(0.0, u[2]);
    EXPECT_NEAR(b.support(i), expect, 1e-12);
  }
  EXPECT_DOUBLE_EQ(b.width(g->axis_index(2, true)), 3.0);
  EXPECT_GE(b.grid_diameter(), 3.0);
  EXPECT_LE(b.grid_diameter(), std::sqrt(14.0) + 1e-12);
}
