#include "hilbertlab/constructions.hpp"
#include "hilbertlab/error.hpp"
#include "hilbertlab/quadric.hpp"
#include "hilbertlab/rel_hyp.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

using namespace hilbertlab;

TEST(FubiniStudy, AnglesBetweenLines) {
  EXPECT_NEAR(fubini_study(PointD{1, 0, 0}, PointD{0, 1, 0}), std::numbers::pi / 2, 1e-12);
  EXPECT_NEAR(fubini_study(PointD{1, 2, 3}, PointD{-2, -4, -6}), 0, 1e-12);
  EXPECT_NEAR(fubini_study(PointD{1, 0}, PointD{1, 1}), std::numbers::pi / 4, 1e-12);
  EXPECT_NEAR(fubini_study_to_hyperplane(PointD{0, 0, 1}, PointD{1, 0, 1}), std::numbers::pi / 4, 1e-12);
}

TEST(PointToSegment, EndpointsAndInteriorPoints) {
  const auto t = make_simplex(3);
  const PointD a = t->normalize(PointD{1, 1, 1});
  const PointD b = t->normalize(PointD{1, 2, 4});
  EXPECT_NEAR(point_to_segment(*t, t->lerp(a, b, 0.3), a, b), 0, 1e-9);
  const PointD off = t->normalize(PointD{4, 1, 1});
  // Oracle: minimum of the exact distance over a fine parameter grid.
  double best = 1e300;
  for (int k = 0; k <= 20000; ++k) best = std::min(best, t->distance(off, t->lerp(a, b, k / 20000.0)));
  EXPECT_NEAR(point_to_segment(*t, off, a, b), best, 1e-6);
}

TEST(Thin, DegenerateTriangleIsWithinResolution) {
  const auto t = make_simplex(3);
  const PointD x = t->normalize(PointD{1, 1, 1});
  const PointD y = t->normalize(PointD{1, 8, 64});
  const PointD z = t->geodesic(x, y, 0.7);
  for (double res : {0.05, 0.01}) {
    const auto cert = thin_certify(*t, x, y, z, res);
    EXPECT_LE(cert.delta, 2 * res);
  }
}

TEST(Thin, HyperbolicTrianglesStayThin) {
  // In the hyperbolic plane every triangle is ln(1 + sqrt 2)-thin in the one-side sense.
  const auto ball = klein_ball(3);
  for (double rho : {1.0, 3.0, 6.0}) {
    std::array<PointD, 3> v;
    for (int k = 0; k < 3; ++k) {
      const double th = 2 * std::numbers::pi * k / 3;
      v[k] = {1, std::tanh(rho) * std::cos(th), std::tanh(rho) * std::sin(th)};
    }
    const auto cert = thin_certify(*ball, v[0], v[1], v[2], 0.01);
    EXPECT_LE(cert.R, std::log(1 + std::sqrt(2.0)) + 0.01);
    const auto ex = thin_certify_exhaustive(*ball, v[0], v[1], v[2], 0.01);
    EXPECT_NEAR(ex.R, cert.R, 0.02);  // symmetric triangle
  }
}

TEST(Thin, RejectsBadInput) {
  const auto t = make_simplex(3);
  const PointD x{1, 1, 1};
  EXPECT_THROW(thin_certify(*t, x, x, PointD{1, 1, 0}, 0.1), Error);
  EXPECT_THROW(thin_certify(*t, x, x, x, 0), Error);
}

TEST(Morse, UnperturbedGeodesicGapIsTheSampleSpacing) {
  const auto t = make_simplex(3);
  const PointD x = t->normalize(PointD{1, 1, 1});
  const PointD y = t->normalize(PointD{1, 5, 25});
  std::mt19937_64 rng(1);
  const auto qg = perturbed_geodesic(*t, x, y, 32, 0.0, rng);
  for (std::size_t i = 0; i < qg.path.size(); ++i) EXPECT_NEAR(t->distance(x, qg.path[i]), qg.params[i], 1e-9);
  // The path is a finite sample, so the gap is at most half its spacing.
  const auto rep = morse_check(*t, qg.path, qg.params, 0.0, 0.0, 0.01);
  EXPECT_LE(rep.gap, 0.5 * std::log(25.0) / 64 + 0.01);
  EXPECT_TRUE(morse_check(*t, qg.path, qg.params, 0.0, 0.1, 0.01).passes);
}

TEST(Morse, PerturbedPathsAreQuasiGeodesics) {
  const auto ball = klein_ball(3);
  std::mt19937_64 rng(2);
  const PointD x{1, -0.9, 0.1};
  const PointD y{1, 0.95, -0.2};
  for (double c : {0.5, 1.0, 2.0}) {
    const auto qg = perturbed_geodesic(*ball, x, y, 24, c, rng);
    for (std::size_t i = 0; i < qg.path.size(); ++i)
      for (std::size_t j = i + 1; j < qg.path.size(); ++j)
        EXPECT_LE(std::abs(ball->distance(qg.path[i], qg.path[j]) - std::abs(qg.params[i] - qg.params[j])), c + 1e-9);
    const auto rep = morse_check(*ball, qg.path, qg.params, c, 0.9, 0.02);
    EXPECT_LE(rep.gap, c / 2 + 1e-6);
  }
}

TEST(Morse, RejectsPathsThatAreNotQuasiGeodesic) {
  const auto t = make_simplex(3);
  const std::vector<PointD> path{t->normalize(PointD{1, 1, 1}), t->normalize(PointD{1, 10, 100})};
  EXPECT_THROW(morse_check(*t, path, {0.0, 0.1}, 0.5, 0, 0.01), Error);
}

TEST(Isolation, ParallelSimplicesShowGrowth) {
  const auto cp = product_domain(make_simplex(3));
  const auto fam = parallel_family(cp, cp.base->vertices(), Rational(4), Rational(1, 4));
  SampleSpec spec;
  spec.seed = 3;
  const auto rep = isolation_diameter(fam[0], fam[5], {1.0, 3.0}, {5.0, 10.0, 20.0}, spec);
  EXPECT_TRUE(rep.growth);
  EXPECT_EQ(rep.rows.size(), 6u);
}

TEST(Isolation, CrossingLinesStayBounded) {
  const auto t = make_simplex(3);
  const auto a = EmbeddedSimplex::recognize(t, {HPoint{1, 0, 0}, HPoint{0, 1, 1}});
  const auto b = EmbeddedSimplex::recognize(t, {HPoint{0, 1, 0}, HPoint{1, 0, 1}});
  SampleSpec spec;
  spec.seed = 4;
  spec.count = 128;
  const auto rep = isolation_diameter(a, b, {0.5, 1.0}, {10.0, 20.0, 40.0}, spec);
  EXPECT_FALSE(rep.growth);
  for (const auto& row : rep.rows) EXPECT_LT(row.d_hat, 12.0);
  EXPECT_THROW(isolation_diameter(a, a, {1.0}, {1.0}, spec), Error);
}

TEST(AlmostProjection, SquareLinesHaveFiniteConstants) {
  const auto fam = enumerate_max_simplices(make_square()).members;
  SampleSpec spec;
  spec.count = 16;
  for (auto kind : {ProjectionKind::Linear, ProjectionKind::ClosestPoint}) {
    const auto rep = aps_check(fam, kind, spec);
    for (double c : rep.C) EXPECT_TRUE(std::isfinite(c));
    EXPECT_EQ(rep.members, 16u);
  }
  EXPECT_THROW(aps_check({}, ProjectionKind::Linear, spec), Error);
}

TEST(Transverse, MeasuresTimeNearTheFamily) {
  const auto t = make_simplex(3);
  const std::vector<EmbeddedSimplex> fam{EmbeddedSimplex::recognize(t, t->vertices())};
  const std::array<PointD, 3> tri{t->normalize(PointD{1, 1, 1}), t->normalize(PointD{1, 2, 4}), t->normalize(PointD{4, 1, 2})};
  const auto tc = transverse_measure(fam, tri, 1.0, 0.01);
  EXPECT_TRUE(std::isfinite(tc.Delta));
  EXPECT_THROW(transverse_measure(fam, tri, 0.0, 0.01), Error);
}

TEST(Penetration, ConstantsFollowTheFormula) {
  const auto pc = penetration_constants(2.0, 0.05, 1.0);
  EXPECT_DOUBLE_EQ(pc.sigma0, 1.0);
  EXPECT_DOUBLE_EQ(pc.bound, 2.0 + 10 + 18);
  EXPECT_DOUBLE_EQ(penetration_constants(0, 3.0, 0).sigma0, 30.0);
}

TEST(ProjectionConstants, NoViolationsOnTheTestSimplex) {
  const auto s = EmbeddedSimplex::recognize(make_simplex(4), {HPoint{1, 0, 0, 0}, HPoint{0, 1, 0, 0}, HPoint{0, 0, 1, 1}});
  const auto l = build_projection(s, supporting_sets(s).front());
  SampleSpec spec;
  spec.count = 24;
  const auto pc = projection_constants(s, l, 0.5 * std::log(10.0), spec, 0.05);
  EXPECT_EQ(pc.additivity_violations, 0u);
  EXPECT_TRUE(std::isfinite(pc.delta2));
}
