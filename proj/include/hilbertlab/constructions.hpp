#pragma once

#include "hilbertlab/quadric.hpp"
#include "hilbertlab/simplex.hpp"

#include <cstdint>
#include <vector>

namespace hilbertlab {

/// Open simplex with vertices e_1, ..., e_d in P(R^d).
DomainPtr make_simplex(std::size_t d);
/// (-1, 1) in the chart x_0 = 1.
DomainPtr make_interval();
/// [1 : +-1 : +-1], vertices in cyclic order.
DomainPtr make_square();

/// The product domain over the cone of a polytope, with its diagonal copy of the base.
struct ConeProduct {
  DomainPtr base;
  DomainPtr product;  // vertices (v_i, 0) then (0, v_i)

  /// [(s x, x)] with x the chart-normalized lift of x.
  HPoint lift(const HPoint& x, const Rational& s = Rational(1)) const;
  HPoint star(const HPoint& x) const { return lift(x); }
  /// The diagonal copy of the base; requires the base to be a simplex.
  EmbeddedSimplex diagonal() const;
};
ConeProduct product_domain(const DomainPtr& base);
/// [g (+) g] acting on the doubled coordinates.
ProjMap doubled(const ProjMap& g);

struct ThickenReport {
  double R = 0;
  Rational q_R;     // rational q_R <= e^{2R}; inner samples satisfy q <= q_R
  Rational s_plus;  // face interval endpoint parameter, s_plus <= e^{2R}
  Rational s_minus;
  std::vector<HPoint> inner;           // samples with H(y, C*) <= R
  std::vector<HPoint> face_endpoints;  // [(s+- v, v)] for every base vertex
  bool inner_exact_ok = true;
  double inner_max = 0;
  std::vector<HPoint> hull_points;     // convex combinations of inner samples
  std::vector<std::size_t> hull_sizes;
  std::vector<double> hull_distances;  // upper bounds for H(y, C*)
  double hull_max = 0;
  bool combination_bound_ok = true;    // every m-combination within m R
  bool outer_bound_ok = true;          // every combination within 2^{d-1} R
};
/// Samples the thickened core of a simplex base. Requires R >= 0.
ThickenReport thicken(const ConeProduct& cp, double R, std::size_t inner_count, std::size_t hull_count, std::uint64_t seed);

/// The 2^k simplices with vertex j at [(s^{sigma_j} v_j, v_j)]; member index encodes sigma
/// with bit j set meaning s_minus.
std::vector<EmbeddedSimplex> parallel_family(const ConeProduct& cp, const std::vector<HPoint>& base_vertices,
                                             const Rational& s_plus, const Rational& s_minus);

struct RescaleStep {
  std::size_t n = 0;
  ProjMap frame;  // original coordinates -> frame coordinates
  ProjMap g;      // diagonal in the frame
  HPoint p;       // p_n in original coordinates
  bool p_interior = false;
  std::vector<PointD> rescaled_vertices;  // frame coordinates after g
  double gap = 0;                         // sampled Fubini-Study Hausdorff distance to the limit simplex
};
RescaleStep benzecri_rescale(const PolytopeDomain& domain, const HPoint& a, const HPoint& b, const HPoint& c, std::size_t n,
                             std::size_t grid = 24);

struct LimitSample {
  HPoint point;
  VertexMask face = 0;
  double distance = 0;  // Fubini-Study distance to the nearest facet hyperplane
};
struct OrbitReport {
  std::vector<HPoint> points;
  std::vector<std::size_t> word_length;
  std::vector<LimitSample> limit;
  double core_fraction = 0;  // share of probe points inside the hull of the limit samples
  std::size_t probes = 0;
};
bool preserves(const PolytopeDomain& domain, const ProjMap& g);
OrbitReport orbit_sample(const PolytopeDomain& domain, const std::vector<ProjMap>& gens, const HPoint& basepoint,
                         std::size_t max_word_length, double eps = 1e-3, std::size_t probes = 64, std::uint64_t seed = 1);

struct LatticeReport {
  std::size_t rank = 0;
  std::vector<std::vector<double>> log_vectors;  // log|lambda_i / lambda_0| per generator
  std::vector<std::size_t> basis;                // generator indices of an independent subset
};
LatticeReport stabilizer_lattice(const std::vector<HPoint>& vertices, const std::vector<ProjMap>& gens);

}  // namespace hilbertlab
