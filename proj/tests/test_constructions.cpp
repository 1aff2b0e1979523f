#include "hilbertlab/constructions.hpp"
#include "hilbertlab/error.hpp"
#include "hilbertlab/projection.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <functional>
#include <set>

using namespace hilbertlab;

namespace {

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "expected an error";
  return ErrorKind::InvalidInput;
}

// H(y, C*) over a simplex base: half the largest |log(a_i / b_i)| for y = [a : b].
double core_distance_oracle(const HPoint& y, std::size_t d) {
  const PointD v = y.to_doubles();
  double worst = 0;
  for (std::size_t i = 0; i < d; ++i) worst = std::max(worst, std::abs(std::log(v[i] / v[d + i])));
  return 0.5 * worst;
}

}  // namespace

TEST(StandardDomains, Shapes) {
  EXPECT_EQ(make_simplex(4)->vertex_count(), 4u);
  EXPECT_EQ(make_simplex(4)->facets().size(), 4u);
  EXPECT_EQ(make_interval()->dim(), 1u);
  EXPECT_EQ(make_square()->facets().size(), 4u);
  EXPECT_EQ(kind_of([] { make_simplex(1); }), ErrorKind::InvalidInput);
}

TEST(ConeProduct, TriangleProductIsAFiveSimplex) {
  const auto cp = product_domain(make_simplex(3));
  EXPECT_EQ(cp.product->vertex_count(), 6u);
  EXPECT_EQ(cp.product->facets().size(), 6u);
  EXPECT_EQ(cp.product->dim(), 5u);
  const HPoint x{1, 2, 3};
  EXPECT_EQ(cp.lift(x, Rational(5)), (HPoint{5, 10, 15, 1, 2, 3}));
  EXPECT_EQ(cp.star(x), (HPoint{1, 2, 3, 1, 2, 3}));
  const auto diag = cp.diagonal();
  EXPECT_EQ(diag.vertices().size(), 3u);
  EXPECT_EQ(kind_of([] { product_domain(make_square()).diagonal(); }), ErrorKind::InvalidInput);
}

TEST(ConeProduct, DoubledActsBlockwise) {
  const ProjMap g = ProjMap::diagonal({2, 3, 5});
  const ProjMap gg = doubled(g);
  EXPECT_EQ(gg(HPoint{1, 1, 1, 1, 1, 1}), (HPoint{2, 3, 5, 2, 3, 5}));
  const auto cp = product_domain(make_simplex(3));
  EXPECT_EQ(gg(cp.star(HPoint{1, 2, 3})), cp.star(g(HPoint{1, 2, 3})));
}

TEST(Thicken, SamplesRespectTheAnalyticDistance) {
  const auto cp = product_domain(make_simplex(3));
  for (double R : {0.5, 1.0}) {
    const auto rep = thicken(cp, R, 40, 40, 9);
    EXPECT_TRUE(rep.inner_exact_ok);
    EXPECT_TRUE(rep.combination_bound_ok);
    EXPECT_TRUE(rep.outer_bound_ok);
    EXPECT_LE(to_double(rep.q_R), std::exp(2 * R) + 1e-12);
    for (const auto& y : rep.inner) EXPECT_LE(core_distance_oracle(y, 3), R + 1e-9);
    for (std::size_t i = 0; i < rep.hull_points.size(); ++i) {
      const double truth = core_distance_oracle(rep.hull_points[i], 3);
      EXPECT_LE(truth, R + 1e-9);
      EXPECT_LE(truth, rep.hull_distances[i] + 1e-9);
    }
    EXPECT_EQ(rep.face_endpoints.size(), 6u);
  }
  EXPECT_THROW(thicken(cp, -1.0, 4, 4, 1), Error);
}

TEST(ParallelFamily, EightPairwiseParallelMembers) {
  const auto cp = product_domain(make_simplex(3));
  const auto fam = parallel_family(cp, cp.base->vertices(), Rational(3), Rational(1, 3));
  ASSERT_EQ(fam.size(), 8u);
  std::set<std::string> keys;
  for (const auto& s : fam) {
    std::string k;
    for (const auto& v : s.vertices()) k += v.key() + ";";
    keys.insert(k);
  }
  EXPECT_EQ(keys.size(), 8u);
  for (std::size_t i = 0; i < fam.size(); ++i)
    for (std::size_t j = i + 1; j < fam.size(); ++j) EXPECT_TRUE(are_parallel(fam[i], fam[j]).has_value());
  // Bit j selects s_minus at vertex j.
  EXPECT_EQ(fam[1].vertices()[0], cp.lift(cp.base->vertices()[0], Rational(1, 3)));
  EXPECT_EQ(fam[1].vertices()[1], cp.lift(cp.base->vertices()[1], Rational(3)));
  EXPECT_EQ(kind_of([&] { parallel_family(cp, cp.base->vertices(), Rational(2), Rational(2)); }),
            ErrorKind::DegenerateInterval);
}

TEST(Rescale, GapShrinksWithN) {
  const auto t = make_simplex(3);
  const HPoint a{1, 1, 0}, b{0, 1, 0}, c{0, 1, 1};
  ASSERT_TRUE(half_triangle(*t, a, b, c));
  double prev = 1e300;
  for (std::size_t n = 1; n <= 6; ++n) {
    const auto step = benzecri_rescale(*t, a, b, c, n);
    EXPECT_TRUE(step.p_interior);
    EXPECT_LT(step.gap, prev);
    prev = step.gap;
  }
  EXPECT_LT(prev, 0.05);
  EXPECT_EQ(kind_of([&] { benzecri_rescale(*t, HPoint{1, 1, 1}, HPoint{1, 2, 3}, HPoint{3, 2, 1}, 1); }),
            ErrorKind::NotHalfTriangle);
}

TEST(Orbit, DiagonalGroupLimitsOnTheBoundary) {
  const auto t = make_simplex(3);
  const std::vector<ProjMap> gens{ProjMap::diagonal({8, 1, 1}), ProjMap::diagonal({1, 8, 1})};
  for (const auto& g : gens) EXPECT_TRUE(preserves(*t, g));
  EXPECT_FALSE(preserves(*t, ProjMap(Matrix{{1, 1, 0}, {0, 1, 0}, {0, 0, 1}})));
  const auto rep = orbit_sample(*t, gens, HPoint{1, 1, 1}, 4);
  EXPECT_GT(rep.points.size(), 10u);
  EXPECT_FALSE(rep.limit.empty());
  for (const auto& s : rep.limit) {
    EXPECT_NE(s.face, 0u);
    EXPECT_NE(s.face, t->all_vertices());
    EXPECT_LE(s.distance, 1e-3);
  }
  EXPECT_EQ(kind_of([&] { orbit_sample(*t, {ProjMap(Matrix{{1, 1, 0}, {0, 1, 0}, {0, 0, 1}})}, HPoint{1, 1, 1}, 2); }),
            ErrorKind::NonPreserving);
  EXPECT_EQ(kind_of([&] { orbit_sample(*t, gens, HPoint{1, 0, 1}, 2); }), ErrorKind::NotInterior);
}

TEST(Stabilizer, RankOfDiagonalGroups) {
  const auto t = make_simplex(3);
  const auto two = stabilizer_lattice(t->vertices(), {ProjMap::diagonal({8, 1, 1}), ProjMap::diagonal({1, 8, 1})});
  EXPECT_EQ(two.rank, 2u);
  // diag(4,2,1) diag(1,2,4) = 4 I, so these generators span a rank-one lattice in PGL.
  const auto one = stabilizer_lattice(t->vertices(), {ProjMap::diagonal({4, 2, 1}), ProjMap::diagonal({1, 2, 4})});
  EXPECT_EQ(one.rank, 1u);
  ASSERT_EQ(one.log_vectors.size(), 2u);
  EXPECT_NEAR(one.log_vectors[0].back() + one.log_vectors[1].back(), 0, 1e-12);
  const auto perm = std::vector<std::size_t>{1, 2, 0};
  EXPECT_EQ(kind_of([&] { stabilizer_lattice(t->vertices(), {ProjMap::permutation(perm)}); }),
            ErrorKind::NotFixingVertices);
}
