#pragma once

#include "hilbertlab/simplex.hpp"

#include <random>
#include <vector>

namespace hilbertlab {

/// One domain facet per maximal boundary face of S. Entry j supports the face
/// opposite simplex vertex j.
struct SupportingSet {
  std::vector<std::size_t> facet_indices;
  Matrix functionals;
};

/// Cartesian product of facet choices, in lexicographic order of facet indices.
std::vector<SupportingSet> supporting_sets(const EmbeddedSimplex& s);

/// Linear projection with image Span S and kernel the intersection of the supporting set.
class LinearProjection {
 public:
  const Matrix& matrix() const noexcept { return matrix_; }
  const LinSubspace& kernel() const noexcept { return kernel_; }
  const LinSubspace& image() const noexcept { return image_; }
  const SupportingSet& supporting_set() const noexcept { return set_; }

  /// Throws InKernel when x is annihilated.
  HPoint project(const HPoint& x) const;
  PointD project(std::span<const double> x) const;

 private:
  friend LinearProjection build_projection(const EmbeddedSimplex& s, const SupportingSet& h);
  Matrix matrix_;
  std::vector<std::vector<double>> matrix_d_;
  LinSubspace kernel_{1, {}};
  LinSubspace image_{1, {}};
  SupportingSet set_;
};

/// Throws DirectSumFailure if the kernel and Span S are not complementary or the
/// kernel meets the closed domain.
LinearProjection build_projection(const EmbeddedSimplex& s, const SupportingSet& h);
inline HPoint project(const LinearProjection& l, const HPoint& x) { return l.project(x); }

struct ClosestPoint {
  PointD point;                              // chart-normalized
  std::vector<double> coeffs;                // in the simplex lift basis
  double radius = 0;                         // H(x, point), an upper bound for H(x, S)
  std::vector<std::vector<double>> extremes;  // coefficient vectors spanning the minimizer set
  double flat_diameter = 0;                  // simplex-metric diameter of the extremes
};

/// Minimizes H(x, s) over s in S by a linear program in the simplex coefficients.
/// Throws ToleranceNotReached when the program does not reach optimality.
ClosestPoint closest_point(const EmbeddedSimplex& s, std::span<const double> x, bool with_extremes = true);
ClosestPoint closest_point(const EmbeddedSimplex& s, const HPoint& x);
/// Distance from x to S (closest-point radius).
double distance_to_simplex(const EmbeddedSimplex& s, std::span<const double> x);

struct ProjectionReport {
  double delta1 = 0;              // max over supporting sets
  double delta1_first_set = 0;    // lexicographically first set only
  std::size_t samples = 0;
  std::size_t supporting_sets = 0;
  PointD witness_x;
  PointD witness_lx;
  PointD witness_p;
  std::size_t witness_set = 0;
};

/// Max over samples and supporting sets of max_{p in pi_S(x)} H(L(x), p).
ProjectionReport coarse_gap(const EmbeddedSimplex& s, std::span<const PointD> samples);
ProjectionReport coarse_gap(const EmbeddedSimplex& s, std::size_t count, std::uint64_t seed, unsigned max_weight = 10);

}  // namespace hilbertlab
