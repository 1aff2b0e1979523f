#include "hilbertlab/error.hpp"
#include "hilbertlab/quadric.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace hilbertlab;

TEST(Klein, DistanceFromCenterIsAtanh) {
  const auto ball = klein_ball(3);
  for (double r : {0.1, 0.5, 0.9, 0.999}) {
    const std::vector<double> o{1, 0, 0};
    const std::vector<double> p{1, r * std::cos(1.0), r * std::sin(1.0)};
    EXPECT_NEAR(ball->distance(o, p), std::atanh(r), 1e-12);
  }
}

TEST(Klein, MatchesHyperboloidModel) {
  // cosh d = B(u, v) / sqrt(B(u,u) B(v,v)) with the Lorentz form, an oracle independent of chords.
  const auto ball = klein_ball(3);
  const std::vector<double> a{1, 0.3, -0.4};
  const std::vector<double> b{1, -0.7, 0.2};
  auto lorentz = [](const std::vector<double>& u, const std::vector<double>& v) { return u[0] * v[0] - u[1] * v[1] - u[2] * v[2]; };
  const double expected = std::acosh(lorentz(a, b) / std::sqrt(lorentz(a, a) * lorentz(b, b)));
  EXPECT_NEAR(ball->distance(a, b), expected, 1e-12);
}

TEST(Klein, InteriorAndChord) {
  const auto ball = klein_ball(3);
  EXPECT_TRUE(ball->is_interior(std::vector<double>{1, 0.5, 0.5}));
  EXPECT_FALSE(ball->is_interior(std::vector<double>{1, 1, 0}));
  const auto [ta, tb] = ball->chord_params(std::vector<double>{1, 0, 0}, std::vector<double>{1, 0.5, 0});
  EXPECT_NEAR(ta, -2, 1e-12);
  EXPECT_NEAR(tb, 2, 1e-12);
}

TEST(Klein, RejectsFormsWithWrongSignature) {
  EXPECT_THROW(QuadricDomain({{1, 0}, {0, 1}}), Error);
  EXPECT_THROW(QuadricDomain({{-1, 0, 0}, {0, -1, 0}, {0, 0, 1}}), Error);
  EXPECT_THROW(QuadricDomain({{-1, 1}, {0, 1}}), Error);
}
