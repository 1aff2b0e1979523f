#pragma once

#include "hilbertlab/length.hpp"
#include "hilbertlab/projective.hpp"

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <random>
#include <span>
#include <utility>
#include <vector>

namespace hilbertlab {

using PointD = std::vector<double>;

/// Floating-point view of a properly convex domain. Points are homogeneous
/// double vectors; segments are parametrized as (1-t) x + t y on chart-normalized lifts.
class MetricDomain {
 public:
  virtual ~MetricDomain() = default;

  virtual std::size_t ambient_dim() const = 0;
  /// Functional positive on the closed domain.
  virtual const std::vector<double>& chart_functional() const = 0;
  virtual bool is_interior(std::span<const double> x) const = 0;
  /// Boundary parameters t_a < 0 < 1 < t_b of the line through chart-normalized x != y.
  virtual std::pair<double, double> chord_params(std::span<const double> x, std::span<const double> y) const = 0;
  virtual double distance(std::span<const double> x, std::span<const double> y) const;

  PointD normalize(std::span<const double> x) const;
  PointD lerp(std::span<const double> x, std::span<const double> y, double t) const;
  /// Point of [x, y] at distance s from x; s is clamped to [0, H(x, y)].
  PointD geodesic(std::span<const double> x, std::span<const double> y, double s) const;
};

using VertexMask = std::uint64_t;
inline constexpr std::size_t kMaxVertices = 64;

enum class Location { Interior, Boundary, Outside };

struct LocateResult {
  Location kind = Location::Outside;
  /// Vertex set of the relatively open face containing the point (all vertices when interior).
  VertexMask face = 0;
};

/// Relative interior of the convex hull of finitely many points of P(R^d), exact.
/// The given vertex lifts generate the cone; every facet functional is
/// nonnegative on them and vanishes exactly on its incident vertices.
class PolytopeDomain : public MetricDomain, public std::enable_shared_from_this<PolytopeDomain> {
 public:
  static std::shared_ptr<const PolytopeDomain> create(std::vector<HPoint> vertices);
  /// Uses precomputed facets (e.g. from a cache) after checking them against the vertices.
  static std::shared_ptr<const PolytopeDomain> create_with_facets(std::vector<HPoint> vertices, Matrix facets);

  PolytopeDomain(const PolytopeDomain&) = delete;
  PolytopeDomain& operator=(const PolytopeDomain&) = delete;

  std::size_t ambient_dim() const override { return ambient_; }
  /// Projective dimension.
  std::size_t dim() const noexcept { return span_.dim() - 1; }
  std::size_t vertex_count() const noexcept { return vertices_.size(); }
  const std::vector<HPoint>& vertices() const noexcept { return vertices_; }
  /// Lifts with chart value one.
  const Matrix& vertex_lifts() const noexcept { return lifts_; }
  const Matrix& facets() const noexcept { return facets_; }
  const std::vector<VertexMask>& facet_masks() const noexcept { return facet_masks_; }
  VertexMask all_vertices() const noexcept { return all_; }
  const Chart& chart() const noexcept { return chart_; }
  const LinSubspace& span() const noexcept { return span_; }

  LocateResult locate(const HPoint& x) const;
  Vector facet_values(std::span<const Rational> v) const;
  /// Chart-normalized lift; throws NoCommonChart where the chart vanishes.
  Vector normalized_lift(const HPoint& x) const { return chart_.dehomogenize(x); }
  /// Smallest face whose closure contains the given vertices (all vertices if none).
  VertexMask face_closure(VertexMask vertices) const;
  bool in_common_facet(VertexMask vertices) const;
  /// Every proper nonempty face, as vertex sets, ordered by size then value.
  std::vector<VertexMask> face_lattice() const;
  /// The open face with the given vertex set as a domain in its own span; built once.
  std::shared_ptr<const PolytopeDomain> face_domain(VertexMask face) const;
  Vector barycenter(VertexMask vertices) const;

  const std::vector<double>& chart_functional() const override { return chart_d_; }
  bool is_interior(std::span<const double> x) const override;
  std::pair<double, double> chord_params(std::span<const double> x, std::span<const double> y) const override;
  double distance(std::span<const double> x, std::span<const double> y) const override;
  const std::vector<std::vector<double>>& facets_d() const noexcept { return facets_d_; }
  std::vector<double> facet_values(std::span<const double> x) const;

 private:
  PolytopeDomain() = default;
  void finish_construction();

  std::size_t ambient_ = 0;
  std::vector<HPoint> vertices_;
  Matrix lifts_;
  Matrix facets_;
  std::vector<VertexMask> facet_masks_;
  VertexMask all_ = 0;
  Chart chart_{Vector{Rational(1)}};
  LinSubspace span_{1, {}};
  std::vector<double> chart_d_;
  std::vector<std::vector<double>> facets_d_;

  mutable std::mutex face_mutex_;
  mutable std::map<VertexMask, std::shared_ptr<const PolytopeDomain>> face_cache_;
};

using DomainPtr = std::shared_ptr<const PolytopeDomain>;

/// A relatively open face of a polytope domain, identified by its vertex set.
class Face {
 public:
  Face(DomainPtr parent, VertexMask vertices);

  VertexMask vertex_set() const noexcept { return vertices_; }
  const PolytopeDomain& parent() const noexcept { return *parent_; }
  DomainPtr domain() const { return parent_->face_domain(vertices_); }
  std::size_t dim() const { return domain()->dim(); }
  const LinSubspace& span() const { return domain()->span(); }
  bool is_whole_domain() const noexcept { return vertices_ == parent_->all_vertices(); }
  bool contains(const HPoint& x) const;

  friend bool operator==(const Face& a, const Face& b) {
    return a.parent_ == b.parent_ && a.vertices_ == b.vertices_;
  }

 private:
  DomainPtr parent_;
  VertexMask vertices_;
};

inline std::size_t popcount(VertexMask m) { return static_cast<std::size_t>(__builtin_popcountll(m)); }

LocateResult locate(const PolytopeDomain& domain, const HPoint& x);

struct ChordEnd {
  HPoint point;
  Face face;
};

/// Boundary points a, b of the line xy, ordered a, x, y, b.
std::pair<ChordEnd, ChordEnd> chord(const PolytopeDomain& domain, const HPoint& x, const HPoint& y);

HilbertLength hilbert_distance(const PolytopeDomain& domain, const HPoint& x, const HPoint& y);
/// Distance inside the common face of x and y, computed in that face's own domain.
HilbertLength face_distance(const PolytopeDomain& domain, const HPoint& x, const HPoint& y);
HPoint geodesic_point(const PolytopeDomain& domain, const HPoint& x, const HPoint& y, const HilbertLength& s);

Face face_of(const PolytopeDomain& domain, const HPoint& x);

struct SupportingData {
  std::vector<std::size_t> facets;
  bool is_c1 = false;
};
SupportingData supporting_data(const PolytopeDomain& domain, const HPoint& x);

/// [a,b] lies in the boundary iff a and b share a facet (a, b in the closed domain).
bool segment_in_boundary(const PolytopeDomain& domain, const HPoint& a, const HPoint& b);
bool half_triangle(const PolytopeDomain& domain, const HPoint& a, const HPoint& b, const HPoint& c);

struct Ball {
  HPoint center;
  HilbertLength radius;
};
HilbertLength hausdorff_distance(const PolytopeDomain& domain, std::span<const HPoint> a, std::span<const HPoint> b,
                                 const std::optional<Ball>& restrict_to = std::nullopt);

/// Positive integer combination of the vertex lifts with weights in [1, max_weight].
HPoint sample_interior(const PolytopeDomain& domain, std::mt19937_64& rng, unsigned max_weight = 10);
/// Same inside the open face with the given vertex set.
HPoint sample_in_face(const PolytopeDomain& domain, VertexMask face, std::mt19937_64& rng, unsigned max_weight = 10);

}  // namespace hilbertlab
