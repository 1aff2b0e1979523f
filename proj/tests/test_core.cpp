#include "hilbertlab/error.hpp"
#include "hilbertlab/lp.hpp"
#include "hilbertlab/parallel.hpp"
#include "hilbertlab/projective.hpp"

#include <gtest/gtest.h>

#include <atomic>
#include <cmath>

using namespace hilbertlab;

TEST(Rational, ParsesFractionsIntegersAndDecimalsExactly) {
  EXPECT_EQ(parse_rational("3/6"), Rational(1, 2));
  EXPECT_EQ(parse_rational("-7"), Rational(-7));
  EXPECT_EQ(parse_rational("-0.125"), Rational(-1, 8));
  EXPECT_EQ(parse_rational("3e-2"), Rational(3, 100));
  EXPECT_EQ(parse_rational("010/-0012"), Rational(-5, 6));
  EXPECT_THROW(parse_rational("1/0"), Error);
  EXPECT_THROW(parse_rational("abc"), Error);
}

TEST(Rational, FormatsInLowestTerms) {
  EXPECT_EQ(format_rational(Rational(6, 4)), "3/2");
  EXPECT_EQ(format_rational(Rational(-4, 2)), "-2");
  EXPECT_EQ(format_rational(Rational(0)), "0");
}

TEST(Rational, LogHandlesValuesBeyondDoubleRange) {
  Rational big = 1;
  for (int i = 0; i < 2000; ++i) big *= 2;
  EXPECT_NEAR(log_rational(big), 2000 * std::log(2.0), 1e-9);
  EXPECT_NEAR(log_rational(1 / big), -2000 * std::log(2.0), 1e-9);
}

TEST(Rational, FloorStaysBelowValue) {
  for (double v : {1.0, 2.718281828, 7.38905609893065, 54.598150033144236}) {
    const Rational r = rational_floor(v);
    EXPECT_LE(to_double(r), v);
    EXPECT_GT(to_double(r), v - 1e-11);
  }
  EXPECT_EQ(from_double(0.375), Rational(3, 8));
}

TEST(Linalg, RankNullspaceAndInverse) {
  const Matrix m{{1, 2, 3}, {2, 4, 6}, {1, 0, 1}};
  EXPECT_EQ(linalg::rank(m), 2u);
  const Matrix ns = linalg::nullspace(m, 3);
  ASSERT_EQ(ns.size(), 1u);
  for (const auto& row : m) EXPECT_EQ(linalg::dot(row, ns[0]), 0);
  const Matrix a{{2, 1}, {1, 1}};
  EXPECT_EQ(linalg::multiply(a, linalg::inverse(a)), linalg::identity(2));
  EXPECT_EQ(linalg::determinant(a), 1);
}

TEST(Linalg, PrimitiveIsCoprimeWithPositiveLead) {
  const Vector p = linalg::primitive(Vector{Rational(-2, 3), Rational(4, 3), Rational(0)});
  EXPECT_EQ(p, (Vector{1, -2, 0}));
}

TEST(HPoint, EqualityIsProjective) {
  EXPECT_EQ(HPoint({1, 2, 4}), HPoint({-2, -4, -8}));
  EXPECT_NE(HPoint({1, 2, 4}), HPoint({1, 2, 5}));
  EXPECT_EQ(HPoint({2, 4, 6}).key(), HPoint({-1, -2, -3}).key());
}

TEST(ProjMap, InverseAndComposition) {
  const ProjMap g(Matrix{{1, 1, 0}, {0, 1, 0}, {0, 0, 2}});
  EXPECT_TRUE((g * g.inverse()).equivalent(ProjMap::identity(3)));
  EXPECT_TRUE(ProjMap::diagonal({2, 2, 2}).equivalent(ProjMap::identity(3)));
  const std::vector<std::size_t> perm{1, 2, 0};
  EXPECT_EQ(ProjMap::permutation(perm)(HPoint({1, 0, 0})), HPoint({0, 1, 0}));
}

TEST(CrossRatio, MatchesAffineFormula) {
  // Points 0, 1, 2, 4 on an affine line: |x-b||y-a| / (|x-a||y-b|) = 3*2 / (1*2) = 3.
  const Rational cr = cross_ratio(HPoint({1, 0}), HPoint({1, 1}), HPoint({1, 2}), HPoint({1, 4}));
  EXPECT_EQ(cr, 3);
}

TEST(LinSubspace, CanonicalBasisComparesEqual) {
  const LinSubspace a(3, Matrix{{1, 1, 0}, {0, 1, 1}});
  const LinSubspace b(3, Matrix{{1, 2, 1}, {1, 0, -1}});
  EXPECT_EQ(a, b);
  EXPECT_TRUE(a.contains(Vector{2, 3, 1}));
  EXPECT_FALSE(a.contains(Vector{0, 0, 1}));
}

TEST(Lp, SolvesSmallProgramInBothArithmetics) {
  // maximize x + y with x + 2y <= 4, 3x + y <= 6: optimum at (8/5, 6/5).
  lp::Problem p{2, {{{1, 2}, lp::Relation::LessEq, 4}, {{3, 1}, lp::Relation::LessEq, 6}}, {1, 1}};
  const auto s = lp::maximize(p);
  ASSERT_EQ(s.status, lp::Status::Optimal);
  EXPECT_NEAR(s.value, 14.0 / 5, 1e-12);
  lp::ExactProblem q{2, {{{1, 2}, lp::Relation::LessEq, 4}, {{3, 1}, lp::Relation::LessEq, 6}}, {1, 1}};
  const auto e = lp::maximize(q);
  ASSERT_EQ(e.status, lp::Status::Optimal);
  EXPECT_EQ(e.value, Rational(14, 5));
  EXPECT_EQ(e.x[0], Rational(8, 5));
}

TEST(Lp, DetectsInfeasibleAndUnbounded) {
  lp::Problem inf{1, {{{1}, lp::Relation::GreaterEq, 2}, {{1}, lp::Relation::LessEq, 1}}, {1}};
  EXPECT_EQ(lp::maximize(inf).status, lp::Status::Infeasible);
  lp::Problem unb{1, {{{1}, lp::Relation::GreaterEq, 2}}, {1}};
  EXPECT_EQ(lp::maximize(unb).status, lp::Status::Unbounded);
}

TEST(Parallel, RethrowsLowestFailingIndexAndCoversAll) {
  std::vector<int> hit(100, 0);
  parallel_for(hit.size(), [&](std::size_t i) { hit[i] = 1; });
  EXPECT_EQ(std::count(hit.begin(), hit.end(), 1), 100);
  try {
    parallel_for(50, [](std::size_t i) {
      if (i == 7 || i == 31) fail(ErrorKind::InvalidInput, std::to_string(i));
    });
    FAIL() << "expected a throw";
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("7"), std::string::npos);
  }
}

TEST(Errors, ClassesMapToExitCodes) {
  EXPECT_EQ(classify(ErrorKind::NotInterior), ErrorClass::Precondition);
  EXPECT_EQ(classify(ErrorKind::BudgetExceeded), ErrorClass::Budget);
  EXPECT_EQ(classify(ErrorKind::DirectSumFailure), ErrorClass::InvariantTrap);
  EXPECT_EQ(to_string(ErrorKind::NotInterior), "NotInterior");
}
