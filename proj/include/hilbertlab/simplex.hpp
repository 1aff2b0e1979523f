#pragma once

#include "hilbertlab/domain.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace hilbertlab {

/// Properly embedded simplex: relint of conv(vertices) lies in the domain and every
/// proper face lies in the boundary. Two simplices are equal iff their spans are.
class EmbeddedSimplex {
 public:
  /// Validates independence, nonempty interior and proper embedding, in that order.
  static EmbeddedSimplex recognize(DomainPtr domain, std::vector<HPoint> vertices);

  const PolytopeDomain& domain() const noexcept { return *domain_; }
  const DomainPtr& domain_ptr() const noexcept { return domain_; }
  std::size_t dim() const noexcept { return vertices_.size() - 1; }
  const std::vector<HPoint>& vertices() const noexcept { return vertices_; }
  /// Chart-normalized vertex lifts (domain chart).
  const Matrix& lifts() const noexcept { return lifts_; }
  /// Open face of the domain containing each vertex.
  const std::vector<VertexMask>& vertex_faces() const noexcept { return faces_; }
  const LinSubspace& span() const noexcept { return span_; }

  /// Coefficients of v in the lift basis, or nullopt when v is outside the span.
  std::optional<Vector> coefficients(std::span<const Rational> v) const;
  /// Membership in the open simplex.
  bool contains(const HPoint& x) const;
  HPoint point(std::span<const Rational> coeffs) const;
  PointD point_d(std::span<const double> coeffs) const;
  /// Sorted canonical vertex keys; equal for equal simplices.
  std::string key() const;

  friend bool operator==(const EmbeddedSimplex& a, const EmbeddedSimplex& b) { return a.span_ == b.span_; }

 private:
  EmbeddedSimplex() = default;

  DomainPtr domain_;
  std::vector<HPoint> vertices_;
  Matrix lifts_;
  std::vector<VertexMask> faces_;
  LinSubspace span_{1, {}};
  Matrix to_coeffs_;  // span coordinates -> lift coefficients
};

/// q of the closed-form simplex metric for positive coefficient vectors.
Rational simplex_q(std::span<const Rational> x, std::span<const Rational> y);
HilbertLength simplex_distance(const EmbeddedSimplex& s, const HPoint& x, const HPoint& y);

/// Ratio tuple (c_i / c_0) and its logarithms.
struct FlatCoords {
  Vector ratios;
  std::vector<double> logs;
};
FlatCoords flat_coords(const EmbeddedSimplex& s, const HPoint& x);
FlatCoords flat_coords_from(std::span<const Rational> coeffs);
/// Polyhedral flat metric; exact in q-space on ratio tuples.
HilbertLength flat_distance(const FlatCoords& u, const FlatCoords& v);
double flat_distance(std::span<const double> u, std::span<const double> v);

enum class Status { Verified, Refuted, Unknown };
std::string to_string(Status s);

struct EnumerationOptions {
  std::size_t max_candidates = 64;
  /// Search nodes allowed below each first candidate.
  std::size_t node_budget = 4'000'000;
  std::optional<std::size_t> max_dim;
};

struct SimplexFamily {
  std::vector<EmbeddedSimplex> members;
  std::size_t candidates = 0;
  std::size_t nodes = 0;
  std::size_t found = 0;  // before the maximality filter
  Status isolated = Status::Unknown;
  Status coarsely_complete = Status::Unknown;
  Status invariant = Status::Unknown;
};

/// Maximal properly embedded simplices with vertices at face barycenters.
SimplexFamily enumerate_max_simplices(const DomainPtr& domain, const EnumerationOptions& options = {});
/// True if a slide of s lies in t (t of larger dimension).
bool dominated_by(const EmbeddedSimplex& s, const EmbeddedSimplex& t);

/// Permutation p with F(a_i) = F(b_{p[i]}), if any.
std::optional<std::vector<std::size_t>> are_parallel(const EmbeddedSimplex& a, const EmbeddedSimplex& b);
/// Groups family members into parallelism classes (indices, in order of first appearance).
std::vector<std::vector<std::size_t>> parallel_classes(const std::vector<EmbeddedSimplex>& members);

struct SlideResult {
  EmbeddedSimplex simplex;
  HilbertLength bound;
};
SlideResult slide(const EmbeddedSimplex& s, const std::map<std::size_t, HPoint>& replacements);

/// Faces of s given as vertex-index masks.
bool opposite(const EmbeddedSimplex& s, VertexMask f1, VertexMask f2);
/// s1, s2 are simplices of face domains of `domain` with disjoint closed faces.
EmbeddedSimplex join_opposite(const DomainPtr& domain, const EmbeddedSimplex& s1, const EmbeddedSimplex& s2);

struct CenterOfMassInfo {
  std::size_t depth = 0;     // recursion levels into non-unique minimizer sets
  double radius = 0;         // Chebyshev radius at the top level
  bool depth_capped = false;
};
/// Hilbert Chebyshev center of finitely many interior points, tie-broken by
/// recursing on the extreme points of the minimizer set.
PointD center_of_mass(const PolytopeDomain& domain, const std::vector<PointD>& points, CenterOfMassInfo* info = nullptr);
HPoint center_of_mass(const PolytopeDomain& domain, std::span<const HPoint> points, CenterOfMassInfo* info = nullptr);

/// The map replacing each vertex by the center of mass of core ∩ its face.
/// `core` is a finite set whose hull is the core.
EmbeddedSimplex canonicalize(const DomainPtr& domain, std::span<const HPoint> core, const EmbeddedSimplex& s);

/// Point of the open simplex with flat coordinates drawn uniformly from [-radius, radius]^k.
PointD sample_simplex(const EmbeddedSimplex& s, std::mt19937_64& rng, double radius);

}  // namespace hilbertlab
