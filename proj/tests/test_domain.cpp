#include "hilbertlab/constructions.hpp"
#include "hilbertlab/domain.hpp"
#include "hilbertlab/error.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

using namespace hilbertlab;

namespace {

// Hilbert q on the standard simplex: max over i, j of x_i y_j / (x_j y_i).
Rational simplex_q_oracle(const HPoint& x, const HPoint& y) {
  Rational best = 1;
  for (std::size_t i = 0; i < x.dim(); ++i)
    for (std::size_t j = 0; j < x.dim(); ++j) best = std::max(best, Rational(x[i] * y[j] / (x[j] * y[i])));
  return best;
}

// Hilbert distance in the square (-1,1)^2 by clipping the line against the box.
double square_oracle(double x0, double y0, double x1, double y1) {
  const double dx = x1 - x0;
  const double dy = y1 - y0;
  double lo = -1e300;
  double hi = 1e300;
  for (auto [p, d] : {std::pair{x0, dx}, std::pair{y0, dy}}) {
    if (d == 0) continue;
    const double a = (-1 - p) / d;
    const double b = (1 - p) / d;
    lo = std::max(lo, std::min(a, b));
    hi = std::min(hi, std::max(a, b));
  }
  // Parameters: x at 0, y at 1, chord ends at lo < 0 and hi > 1.
  return 0.5 * std::log((hi - 0) * (1 - lo) / ((hi - 1) * (0 - lo)));
}

}  // namespace

TEST(Polytope, TriangleFacetsAreCoordinateHyperplanes) {
  const auto t = make_simplex(3);
  ASSERT_EQ(t->facets().size(), 3u);
  EXPECT_EQ(t->facets()[0], (Vector{1, 0, 0}));
  EXPECT_EQ(t->facets()[2], (Vector{0, 0, 1}));
  EXPECT_EQ(t->chart().functional(), (Vector{1, 1, 1}));
  EXPECT_EQ(t->dim(), 2u);
}

TEST(Polytope, SquareFacetsAndChart) {
  const auto s = make_square();
  ASSERT_EQ(s->facets().size(), 4u);
  EXPECT_EQ(s->chart().functional(), (Vector{1, 0, 0}));
  for (const auto& f : s->facets()) {
    int zeros = 0;
    for (const auto& v : s->vertices()) zeros += linalg::dot(f, v.coords()) == 0;
    EXPECT_EQ(zeros, 2);
  }
}

TEST(Polytope, FaceLatticeListsProperFaces) {
  for (std::size_t d = 2; d <= 5; ++d) EXPECT_EQ(make_simplex(d)->face_lattice().size(), (1u << d) - 2) << d;
  EXPECT_EQ(make_square()->face_lattice().size(), 8u);
}

TEST(Polytope, RejectsDegenerateInput) {
  EXPECT_THROW(PolytopeDomain::create({}), Error);
  EXPECT_THROW(PolytopeDomain::create({HPoint{1, 0, 0}, HPoint{1, 0, 0}}), Error);
  // A non-extreme vertex: the midpoint of an edge.
  EXPECT_THROW(PolytopeDomain::create({HPoint{1, 0, 0}, HPoint{0, 1, 0}, HPoint{0, 0, 1}, HPoint{1, 1, 0}}), Error);
  // Antipodal vertices admit no chart.
  EXPECT_THROW(PolytopeDomain::create({HPoint{1, 0}, HPoint{-1, 1}, HPoint{0, -1}}), Error);
}

TEST(Polytope, LocateClassifiesPoints) {
  const auto t = make_simplex(3);
  EXPECT_EQ(t->locate(HPoint{1, 2, 3}).kind, Location::Interior);
  EXPECT_EQ(t->locate(HPoint{-1, -2, -3}).kind, Location::Interior);
  const auto b = t->locate(HPoint{1, 1, 0});
  EXPECT_EQ(b.kind, Location::Boundary);
  EXPECT_EQ(b.face, VertexMask{0b011});
  EXPECT_EQ(t->locate(HPoint{1, -1, 1}).kind, Location::Outside);
}

TEST(Metric, WorkedValueOnTriangle) {
  const auto t = make_simplex(3);
  const auto h = hilbert_distance(*t, HPoint{1, 1, 1}, HPoint{1, 2, 4});
  EXPECT_EQ(h.q(), 4);
  EXPECT_NEAR(h.value(), 0.5 * std::log(4.0), 1e-15);
  EXPECT_EQ(hilbert_distance(*t, HPoint{1, 2, 4}, HPoint{2, 4, 8}).q(), 1);
}

TEST(Metric, SimplexDistanceMatchesRatioFormula) {
  std::mt19937_64 rng(1);
  for (std::size_t d : {2u, 3u, 4u}) {
    const auto dom = make_simplex(d);
    for (int k = 0; k < 200; ++k) {
      const HPoint x = sample_interior(*dom, rng);
      const HPoint y = sample_interior(*dom, rng);
      EXPECT_EQ(hilbert_distance(*dom, x, y).q(), simplex_q_oracle(x, y));
    }
  }
}

TEST(Metric, SquareDistanceMatchesClippingOracle) {
  const auto sq = make_square();
  std::mt19937_64 rng(2);
  for (int k = 0; k < 200; ++k) {
    const HPoint x = sample_interior(*sq, rng);
    const HPoint y = sample_interior(*sq, rng);
    if (x == y) continue;
    const auto a = x.to_doubles();
    const auto b = y.to_doubles();
    const double oracle = square_oracle(a[1] / a[0], a[2] / a[0], b[1] / b[0], b[2] / b[0]);
    EXPECT_NEAR(hilbert_distance(*sq, x, y).value(), oracle, 1e-9);
    EXPECT_NEAR(sq->distance(a, b), oracle, 1e-9);
  }
}

TEST(Metric, ExactAxiomsOnRandomTriples) {
  std::mt19937_64 rng(3);
  for (const auto& dom : {make_interval(), make_simplex(3), make_square()}) {
    for (int k = 0; k < 100; ++k) {
      const HPoint x = sample_interior(*dom, rng);
      const HPoint y = sample_interior(*dom, rng);
      const HPoint z = sample_interior(*dom, rng);
      const Rational xy = hilbert_distance(*dom, x, y).q();
      EXPECT_EQ(xy, hilbert_distance(*dom, y, x).q());
      EXPECT_LE(hilbert_distance(*dom, x, z).q(), xy * hilbert_distance(*dom, y, z).q());
      EXPECT_GE(xy, 1);
    }
  }
}

TEST(Metric, NonInteriorPointsAreRejected) {
  const auto t = make_simplex(3);
  EXPECT_THROW(hilbert_distance(*t, HPoint{1, 1, 0}, HPoint{1, 1, 1}), Error);
  EXPECT_THROW(hilbert_distance(*t, HPoint{1, -1, 1}, HPoint{1, 1, 1}), Error);
}

TEST(Metric, ChordEndsOnFaces) {
  const auto t = make_simplex(3);
  const auto [a, b] = chord(*t, HPoint{1, 1, 1}, HPoint{1, 2, 4});
  EXPECT_EQ(t->locate(a.point).kind, Location::Boundary);
  EXPECT_EQ(t->locate(b.point).kind, Location::Boundary);
  EXPECT_EQ(cross_ratio(a.point, HPoint{1, 1, 1}, HPoint{1, 2, 4}, b.point), 4);
  EXPECT_THROW(chord(*t, HPoint{1, 1, 1}, HPoint{2, 2, 2}), Error);
}

TEST(Metric, GeodesicPointSplitsLengthExactly) {
  const auto t = make_simplex(3);
  const HPoint x{1, 1, 1};
  const HPoint y{1, 4, 16};  // q = 16
  const HPoint m = geodesic_point(*t, x, y, HilbertLength::from_q(4));
  EXPECT_EQ(hilbert_distance(*t, x, m).q(), 4);
  EXPECT_EQ(hilbert_distance(*t, m, y).q(), 4);
  const HPoint far = geodesic_point(*t, x, y, HilbertLength::approx(0.3));
  EXPECT_NEAR(hilbert_distance(*t, x, far).value(), 0.3, 1e-12);
}

TEST(Metric, FaceDistanceUsesTheFaceGeometry) {
  const auto t = make_simplex(3);
  // On the edge x3 = 0 the points [1:1:0] and [1:3:0] are at q = 3.
  EXPECT_EQ(face_distance(*t, HPoint{1, 1, 0}, HPoint{1, 3, 0}).q(), 3);
  EXPECT_THROW(face_distance(*t, HPoint{1, 1, 0}, HPoint{1, 0, 1}), Error);
}

TEST(Faces, SupportingDataAndBoundarySegments) {
  const auto sq = make_square();
  const auto corner = supporting_data(*sq, HPoint{1, 1, 1});
  EXPECT_EQ(corner.facets.size(), 2u);
  EXPECT_FALSE(corner.is_c1);
  const auto edge = supporting_data(*sq, HPoint{1, 1, 0});
  EXPECT_EQ(edge.facets.size(), 1u);
  EXPECT_TRUE(edge.is_c1);
  EXPECT_TRUE(segment_in_boundary(*sq, HPoint{1, 1, 1}, HPoint{1, 1, -1}));
  EXPECT_FALSE(segment_in_boundary(*sq, HPoint{1, 1, 1}, HPoint{1, -1, -1}));
  EXPECT_THROW(face_of(*sq, HPoint{1, 0, 0}), Error);
}

TEST(Faces, HalfTriangleRequiresBoundaryLegsAndInteriorBase) {
  const auto t = make_simplex(3);
  const HPoint a{1, 1, 0};
  const HPoint b{0, 1, 0};
  const HPoint c{0, 1, 1};
  EXPECT_TRUE(half_triangle(*t, a, b, c));
  EXPECT_FALSE(half_triangle(*t, a, b, HPoint{1, 2, 0}));  // collinear along one edge
  EXPECT_FALSE(half_triangle(*t, HPoint{1, 0, 0}, b, HPoint{0, 0, 1}));  // legs are edges but [a,c] is too
}

TEST(Hausdorff, FiniteSetsAndRestriction) {
  const auto t = make_simplex(3);
  const std::vector<HPoint> a{HPoint{1, 1, 1}, HPoint{1, 2, 4}};
  const std::vector<HPoint> b{HPoint{1, 1, 1}};
  EXPECT_EQ(hausdorff_distance(*t, a, b).q(), 4);
  const Ball ball{HPoint{1, 1, 1}, HilbertLength::from_q(2)};
  EXPECT_EQ(hausdorff_distance(*t, a, b, ball).q(), 1);
  const std::vector<HPoint> far{HPoint{1, 100, 10000}};
  EXPECT_THROW(hausdorff_distance(*t, far, b, ball), Error);
}

TEST(Sampling, SamplesLandInTheRequestedFace) {
  const auto sq = make_square();
  std::mt19937_64 rng(4);
  for (VertexMask f : sq->face_lattice()) {
    for (int k = 0; k < 10; ++k) {
      const auto loc = sq->locate(sample_in_face(*sq, f, rng));
      EXPECT_EQ(loc.face, f);
    }
  }
  for (int k = 0; k < 20; ++k) EXPECT_EQ(sq->locate(sample_interior(*sq, rng)).kind, Location::Interior);
}

TEST(FloatPath, AgreesWithExactDistance) {
  const auto dom = product_domain(make_simplex(3)).product;
  std::mt19937_64 rng(5);
  for (int k = 0; k < 50; ++k) {
    const HPoint x = sample_interior(*dom, rng);
    const HPoint y = sample_interior(*dom, rng);
    EXPECT_NEAR(dom->distance(x.to_doubles(), y.to_doubles()), hilbert_distance(*dom, x, y).value(), 1e-9);
  }
}
