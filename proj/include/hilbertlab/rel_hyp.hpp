#pragma once

#include "hilbertlab/projection.hpp"

#include <array>
#include <cstdint>
#include <random>
#include <vector>

namespace hilbertlab {

/// Fubini-Study angle between the lines through x and y.
double fubini_study(std::span<const double> x, std::span<const double> y);
/// Fubini-Study distance from [x] to the projective hyperplane ker f.
double fubini_study_to_hyperplane(std::span<const double> f, std::span<const double> x);

/// H(p, [a, b]) by a coarse scan followed by golden-section refinement.
double point_to_segment(const MetricDomain& domain, std::span<const double> p, std::span<const double> a,
                        std::span<const double> b);

enum class ThinMethod { OneSideCriterion, ExhaustiveSample };
std::string to_string(ThinMethod m);

struct ThinCert {
  std::array<PointD, 3> triangle;
  ThinMethod method = ThinMethod::OneSideCriterion;
  double R = 0;      // max over samples of the distance to the other sides
  double delta = 0;  // 2R for the one-side criterion
  double resolution = 0;
  std::size_t samples = 0;
};

/// Samples [x, y] at Hilbert step `resolution` against [x, z] u [z, y].
ThinCert thin_certify(const MetricDomain& domain, std::span<const double> x, std::span<const double> y,
                      std::span<const double> z, double resolution);
/// Samples all three sides; delta is the largest one-side radius.
ThinCert thin_certify_exhaustive(const MetricDomain& domain, std::span<const double> x, std::span<const double> y,
                                 std::span<const double> z, double resolution);

struct SampleSpec {
  std::size_t count = 64;
  std::uint64_t seed = 1;
  double radius = 3.0;        // flat-coordinate radius for simplex samples
  unsigned max_weight = 10;   // integer weights for interior samples
};

enum class ProjectionKind { Linear, ClosestPoint };

struct APSReport {
  std::array<double, 3> C{0, 0, 0};
  std::size_t samples = 0;
  std::size_t members = 0;
};
/// Axiom violations of an almost-projection system. Linear projections use the
/// lexicographically first supporting set.
APSReport aps_check(const std::vector<EmbeddedSimplex>& family, ProjectionKind kind, const SampleSpec& spec);

struct IsolationRow {
  double r = 0;
  double budget = 0;
  double d_hat = 0;
  std::size_t collected = 0;
};
struct IsolationReport {
  std::vector<IsolationRow> rows;
  double slope = 0;  // largest growth rate of D-hat in the budget
  bool growth = false;
  std::size_t samples_per_budget = 0;
};
/// Growth is flagged when D-hat increases at rate >= 1/2 between the smallest and largest budget.
IsolationReport isolation_diameter(const EmbeddedSimplex& s1, const EmbeddedSimplex& s2, const std::vector<double>& r_list,
                                   const std::vector<double>& budgets, const SampleSpec& spec);

struct TransverseCheck {
  double kappa = 0;
  double Delta = 0;
  std::array<double, 3> per_edge{0, 0, 0};
  double resolution = 0;
};
TransverseCheck transverse_measure(const std::vector<EmbeddedSimplex>& family, const std::array<PointD, 3>& triangle,
                                   double kappa, double resolution);

struct MorseReport {
  bool passes = false;
  double gap = 0;
  double bound = 0;
  double c = 0;
  double delta = 0;
  std::size_t samples = 0;
};
/// path[i] is the sample at arc parameter params[i]. Throws NotQuasiGeodesic if
/// some pair violates the (1, c) inequalities.
MorseReport morse_check(const MetricDomain& domain, const std::vector<PointD>& path, const std::vector<double>& params,
                        double c, double delta, double resolution);

struct QuasiGeodesic {
  std::vector<PointD> path;
  std::vector<double> params;
};

/// Geodesic samples at n+1 evenly spaced parameters, each pushed at most c/2 off the segment: a (1,c)-quasi-geodesic.
QuasiGeodesic perturbed_geodesic(const MetricDomain& domain, std::span<const double> x, std::span<const double> y,
                                 std::size_t n, double c, std::mt19937_64& rng);

struct PenetrationConstants {
  double sigma0 = 1;
  double bound = 0;
};
/// sigma0 = max(10 C, 1, sigma_G); bound = Delta + 10 sigma0 + 18 c sigma0.
PenetrationConstants penetration_constants(double Delta, double C, double c, double sigma_G = 0);

struct ProjectionConstants {
  double delta2 = 0;
  double delta3 = 0;
  double delta4 = 0;
  std::size_t additivity_violations = 0;
  std::size_t penetration_violations = 0;
  std::size_t samples = 0;
};
/// Empirical thin-triangle, additivity, contraction and penetration constants of L.
ProjectionConstants projection_constants(const EmbeddedSimplex& s, const LinearProjection& l, double delta1,
                                         const SampleSpec& spec, double resolution);

}  // namespace hilbertlab
