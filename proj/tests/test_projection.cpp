#include "hilbertlab/constructions.hpp"
#include "hilbertlab/error.hpp"
#include "hilbertlab/projection.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

using namespace hilbertlab;

namespace {

// S = (e1, e2, e3 + e4) in the 3-simplex; its supporting sets differ only in the facet for [e1, e2].
EmbeddedSimplex test_simplex() {
  return EmbeddedSimplex::recognize(make_simplex(4), {HPoint{1, 0, 0, 0}, HPoint{0, 1, 0, 0}, HPoint{0, 0, 1, 1}});
}

// Hilbert distance from x to S: S's points are (a, b, c, c), and only the ratio x3 / x4 is forced.
double distance_oracle(const PointD& x) { return 0.5 * std::abs(std::log(x[2] / x[3])); }

}  // namespace

TEST(SupportingSets, TwoChoicesForTheBaseEdge) {
  const auto s = test_simplex();
  const auto sets = supporting_sets(s);
  ASSERT_EQ(sets.size(), 2u);
  for (const auto& h : sets) EXPECT_EQ(h.functionals.size(), 3u);
}

TEST(LinearProjection, HandDerivedMatrices) {
  const auto s = test_simplex();
  int seen = 0;
  for (const auto& h : supporting_sets(s)) {
    const auto l = build_projection(s, h);
    EXPECT_EQ(l.kernel().dim(), 1u);
    EXPECT_EQ(l.image(), s.span());
    const HPoint x{3, 5, 7, 11};
    const HPoint lx = l.project(x);
    if (l.kernel().contains(Vector{0, 0, 0, 1})) {
      EXPECT_EQ(lx, (HPoint{3, 5, 7, 7}));
      ++seen;
    } else {
      ASSERT_TRUE(l.kernel().contains(Vector{0, 0, 1, 0}));
      EXPECT_EQ(lx, (HPoint{3, 5, 11, 11}));
      seen += 2;
    }
  }
  EXPECT_EQ(seen, 3);
}

TEST(LinearProjection, IsIdempotentAndLandsInS) {
  const auto s = test_simplex();
  const auto l = build_projection(s, supporting_sets(s).front());
  EXPECT_EQ(linalg::multiply(l.matrix(), l.matrix()), l.matrix());
  std::mt19937_64 rng(1);
  for (int k = 0; k < 200; ++k) EXPECT_TRUE(s.contains(l.project(sample_interior(s.domain(), rng))));
  EXPECT_THROW(l.project(HPoint{0, 0, 0, 1}), Error);
}

TEST(LinearProjection, RejectsMismatchedSets) {
  const auto s = test_simplex();
  SupportingSet bad = supporting_sets(s).front();
  bad.functionals.pop_back();
  bad.facet_indices.pop_back();
  EXPECT_THROW(build_projection(s, bad), Error);
}

TEST(ClosestPoint, MatchesAnalyticDistance) {
  const auto s = test_simplex();
  std::mt19937_64 rng(2);
  for (int k = 0; k < 100; ++k) {
    const PointD x = sample_interior(s.domain(), rng).to_doubles();
    const auto cp = closest_point(s, x);
    EXPECT_NEAR(cp.radius, distance_oracle(x), 1e-7);
    EXPECT_GE(cp.radius, distance_oracle(x) - 1e-12);
  }
}

TEST(ClosestPoint, FarPointsFallBackToExactArithmetic) {
  const auto s = test_simplex();
  const PointD x{1, 1, 1, 1e-30};
  EXPECT_NEAR(distance_to_simplex(s, x), distance_oracle(x), 1e-9);
}

TEST(ClosestPoint, PointsOnSHaveZeroRadius) {
  const auto s = test_simplex();
  const auto cp = closest_point(s, HPoint{2, 3, 5, 5});
  EXPECT_NEAR(cp.radius, 0, 1e-12);
  EXPECT_THROW(closest_point(s, HPoint{1, 1, 1, 0}), Error);
}

TEST(ClosestPoint, MinimizerSetIsReported) {
  // For x = [1:1:1:4] every point of S with x1-, x2-ratios inside [1/4, 1] of c is optimal.
  const auto s = test_simplex();
  const auto cp = closest_point(s, PointD{1, 1, 1, 4});
  EXPECT_GT(cp.extremes.size(), 1u);
  EXPECT_GT(cp.flat_diameter, 0.1);
}

TEST(CoarseGap, FiniteAndStable) {
  const auto s = test_simplex();
  const auto a = coarse_gap(s, 300, 1);
  const auto b = coarse_gap(s, 600, 1);
  EXPECT_TRUE(std::isfinite(a.delta1));
  EXPECT_LE(a.delta1, b.delta1);
  EXPECT_EQ(a.supporting_sets, 2u);
  // Integer weights up to 10 keep every ratio within a factor 10.
  EXPECT_LE(b.delta1, 0.5 * std::log(10.0) + 1e-9);
}
