#include "hilbertlab/constructions.hpp"
#include "hilbertlab/error.hpp"
#include "hilbertlab/lp.hpp"
#include "hilbertlab/parallel.hpp"
#include "hilbertlab/projection.hpp"
#include "hilbertlab/rel_hyp.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <set>

namespace hilbertlab {
namespace {

HPoint unit(std::size_t d, std::size_t i) {
  Vector v(d, Rational(0));
  v[i] = 1;
  return HPoint(std::move(v));
}

std::vector<double> unit_norm(std::vector<double> v) {
  double s = 0;
  for (double x : v) s += x * x;
  s = std::sqrt(s);
  for (auto& x : v) x /= s;
  return v;
}

/// Points sum_i w_i g_i over a barycentric grid (or random weights for many generators).
std::vector<PointD> hull_samples(const std::vector<PointD>& gens, std::size_t grid) {
  std::vector<PointD> norm;
  for (const auto& g : gens) norm.push_back(unit_norm(g));
  const std::size_t k = norm.size();
  const std::size_t d = norm.front().size();
  std::vector<PointD> out;
  auto emit = [&](const std::vector<std::size_t>& w) {
    PointD p(d, 0.0);
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t c = 0; c < d; ++c) p[c] += static_cast<double>(w[i]) * norm[i][c];
    out.push_back(std::move(p));
  };
  if (k <= 4) {
    std::vector<std::size_t> w(k, 0);
    auto rec = [&](auto&& self, std::size_t i, std::size_t left) -> void {
      if (i + 1 == k) {
        w[i] = left;
        emit(w);
        return;
      }
      for (std::size_t v = 0; v <= left; ++v) {
        w[i] = v;
        self(self, i + 1, left - v);
      }
    };
    rec(rec, 0, grid);
  } else {
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<std::size_t> pick(0, grid);
    for (std::size_t s = 0; s < 4000; ++s) {
      std::vector<std::size_t> w(k);
      for (auto& x : w) x = pick(rng);
      if (std::all_of(w.begin(), w.end(), [](std::size_t x) { return x == 0; })) continue;
      emit(w);
    }
  }
  return out;
}

double fs_hausdorff(const std::vector<PointD>& a, const std::vector<PointD>& b) {
  auto directed = [](const std::vector<PointD>& from, const std::vector<PointD>& to) {
    std::vector<double> best(from.size());
    parallel_for(from.size(), [&](std::size_t i) {
      double m = std::numeric_limits<double>::infinity();
      for (const auto& q : to) m = std::min(m, fubini_study(from[i], q));
      best[i] = m;
    });
    return *std::max_element(best.begin(), best.end());
  };
  return std::max(directed(a, b), directed(b, a));
}

}  // namespace

DomainPtr make_simplex(std::size_t d) {
  if (d < 2) fail(ErrorKind::InvalidInput, "simplex needs d >= 2");
  std::vector<HPoint> v;
  for (std::size_t i = 0; i < d; ++i) v.push_back(unit(d, i));
  return PolytopeDomain::create(std::move(v));
}

DomainPtr make_interval() { return PolytopeDomain::create({HPoint{1, -1}, HPoint{1, 1}}); }

DomainPtr make_square() {
  return PolytopeDomain::create({HPoint{1, -1, -1}, HPoint{1, 1, -1}, HPoint{1, 1, 1}, HPoint{1, -1, 1}});
}

HPoint ConeProduct::lift(const HPoint& x, const Rational& s) const {
  const Vector xb = base->normalized_lift(x);
  Vector out;
  for (const auto& c : xb) out.push_back(s * c);
  out.insert(out.end(), xb.begin(), xb.end());
  return HPoint(std::move(out));
}

EmbeddedSimplex ConeProduct::diagonal() const {
  if (base->vertex_count() != base->span().dim()) fail(ErrorKind::InvalidInput, "diagonal simplex needs a simplex base");
  std::vector<HPoint> verts;
  for (const auto& v : base->vertices()) verts.push_back(star(v));
  return EmbeddedSimplex::recognize(product, std::move(verts));
}

ConeProduct product_domain(const DomainPtr& base) {
  const std::size_t d = base->ambient_dim();
  std::vector<HPoint> verts;
  for (int half = 0; half < 2; ++half) {
    for (const auto& l : base->vertex_lifts()) {
      Vector v(2 * d, Rational(0));
      for (std::size_t c = 0; c < d; ++c) v[half * d + c] = l[c];
      verts.emplace_back(std::move(v));
    }
  }
  return {base, PolytopeDomain::create(std::move(verts))};
}

ProjMap doubled(const ProjMap& g) {
  const std::size_t d = g.dim();
  Matrix m(2 * d, Vector(2 * d, Rational(0)));
  for (std::size_t r = 0; r < d; ++r)
    for (std::size_t c = 0; c < d; ++c) {
      m[r][c] = g.matrix()[r][c];
      m[d + r][d + c] = g.matrix()[r][c];
    }
  return ProjMap(std::move(m));
}

ThickenReport thicken(const ConeProduct& cp, double R, std::size_t inner_count, std::size_t hull_count, std::uint64_t seed) {
  if (!(R >= 0)) fail(ErrorKind::InvalidInput, "R must be nonnegative");
  const auto core = cp.diagonal();
  const auto& prod = *cp.product;
  ThickenReport rep;
  rep.R = R;
  rep.q_R = std::max(Rational(1), rational_floor(std::exp(2 * R)));
  rep.s_plus = rep.q_R;
  rep.s_minus = 1 / rep.q_R;
  for (const auto& v : cp.base->vertices()) {
    rep.face_endpoints.push_back(cp.lift(v, rep.s_plus));
    rep.face_endpoints.push_back(cp.lift(v, rep.s_minus));
  }
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> frac(0, 1000);
  while (rep.inner.size() < inner_count) {
    const HPoint c = cp.star(sample_interior(*cp.base, rng));
    const HPoint dir = sample_interior(prod, rng);
    const Rational q = 1 + (rep.q_R - 1) * Rational(frac(rng), 1000);
    if (c == dir) continue;
    // Push past dir toward the chord end so the truncation at q_R is reached.
    const HPoint end = chord(prod, c, dir).second.point;
    const HPoint w(linalg::add_scaled(prod.normalized_lift(c), 4 * rep.q_R * rep.q_R, prod.normalized_lift(end)));
    const Rational qcw = hilbert_distance(prod, c, w).q();
    HPoint y = q >= qcw ? w : geodesic_point(prod, c, w, HilbertLength::from_q(q));
    if (!(hilbert_distance(prod, c, y).q() <= rep.q_R)) rep.inner_exact_ok = false;
    rep.inner.push_back(std::move(y));
  }
  std::vector<double> inner_d(rep.inner.size());
  parallel_for(rep.inner.size(), [&](std::size_t i) { inner_d[i] = distance_to_simplex(core, rep.inner[i].to_doubles()); });
  for (double v : inner_d) rep.inner_max = std::max(rep.inner_max, v);

  if (rep.inner.size() >= 2) {
    std::uniform_int_distribution<std::size_t> size(2, std::min<std::size_t>(6, rep.inner.size()));
    std::uniform_int_distribution<int> weight(1, 10);
    for (std::size_t h = 0; h < hull_count; ++h) {
      const std::size_t m = size(rng);
      std::vector<std::size_t> idx(rep.inner.size());
      for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
      std::shuffle(idx.begin(), idx.end(), rng);
      Vector y(prod.ambient_dim(), Rational(0));
      for (std::size_t j = 0; j < m; ++j) {
        const Vector l = prod.normalized_lift(rep.inner[idx[j]]);
        const Rational wj(weight(rng));
        for (std::size_t c = 0; c < y.size(); ++c) y[c] += wj * l[c];
      }
      rep.hull_points.emplace_back(std::move(y));
      rep.hull_sizes.push_back(m);
    }
    rep.hull_distances.resize(rep.hull_points.size());
    parallel_for(rep.hull_points.size(), [&](std::size_t i) {
      rep.hull_distances[i] = distance_to_simplex(core, rep.hull_points[i].to_doubles());
    });
    const double outer = std::pow(2.0, static_cast<double>(cp.base->ambient_dim()) - 1) * R;
    for (std::size_t i = 0; i < rep.hull_points.size(); ++i) {
      rep.hull_max = std::max(rep.hull_max, rep.hull_distances[i]);
      if (rep.hull_distances[i] > static_cast<double>(rep.hull_sizes[i]) * R + 1e-9) rep.combination_bound_ok = false;
      if (rep.hull_distances[i] > outer + 1e-9) rep.outer_bound_ok = false;
    }
  }
  return rep;
}

std::vector<EmbeddedSimplex> parallel_family(const ConeProduct& cp, const std::vector<HPoint>& base_vertices,
                                             const Rational& s_plus, const Rational& s_minus) {
  if (s_plus == s_minus) fail(ErrorKind::DegenerateInterval, "face interval endpoints coincide");
  if (!(s_plus > 0) || !(s_minus > 0)) fail(ErrorKind::InvalidInput, "interval endpoints must be positive");
  if (base_vertices.size() > 16) fail(ErrorKind::InvalidInput, "too many vertices for a parallel family");
  for (const auto& v : base_vertices) {
    const auto loc = cp.base->locate(v);
    if (loc.kind != Location::Boundary || popcount(loc.face) != 1) fail(ErrorKind::InvalidInput, "simplex vertex is not an extreme point");
  }
  std::vector<EmbeddedSimplex> out;
  for (std::size_t sigma = 0; sigma < (std::size_t{1} << base_vertices.size()); ++sigma) {
    std::vector<HPoint> verts;
    for (std::size_t j = 0; j < base_vertices.size(); ++j) verts.push_back(cp.lift(base_vertices[j], (sigma >> j & 1) ? s_minus : s_plus));
    out.push_back(EmbeddedSimplex::recognize(cp.product, std::move(verts)));
  }
  return out;
}

RescaleStep benzecri_rescale(const PolytopeDomain& domain, const HPoint& a, const HPoint& b, const HPoint& c, std::size_t n,
                             std::size_t grid) {
  if (!half_triangle(domain, a, b, c)) fail(ErrorKind::NotHalfTriangle, "(a, b, c) is not a half triangle");
  const std::size_t d = domain.ambient_dim();
  if (d < 3) fail(ErrorKind::FrameFailure, "rescaling needs d >= 3");
  const Vector ah = domain.normalized_lift(a);
  const Vector bh = domain.normalized_lift(b);
  const Vector ch = domain.normalized_lift(c);
  Matrix cols{bh, linalg::add_scaled(ah, Rational(-1), bh), linalg::add_scaled(ch, Rational(-1), bh)};
  if (linalg::rank(cols) != 3) fail(ErrorKind::FrameFailure, "frame points are collinear");
  for (const auto& k : linalg::nullspace({domain.chart().functional()}, d)) {
    if (cols.size() == d) break;
    cols.push_back(k);
    if (linalg::rank(cols) != cols.size()) cols.pop_back();
  }
  if (cols.size() != d) fail(ErrorKind::FrameFailure, "frame does not span");
  const Matrix inv_frame = linalg::transpose(cols);
  RescaleStep step{n, ProjMap(linalg::inverse(inv_frame)), ProjMap::identity(d), HPoint(bh), false, {}, 0};
  Vector diag(d, Rational(1));
  const Rational scale = boost::multiprecision::pow(Integer(2), static_cast<unsigned>(n));
  diag[1] = scale;
  diag[2] = scale;
  step.g = ProjMap::diagonal(diag);
  Vector pf(d, Rational(0));
  pf[0] = 1;
  pf[1] = 1 / scale;
  pf[2] = 1 / scale;
  step.p = HPoint(linalg::multiply(inv_frame, pf));
  step.p_interior = domain.locate(step.p).kind == Location::Interior;
  const ProjMap total = step.g * step.frame;
  for (const auto& v : domain.vertex_lifts()) step.rescaled_vertices.push_back(linalg::to_doubles(total.apply(v)));
  std::vector<PointD> limit;
  for (std::size_t i = 0; i < 3; ++i) limit.push_back(unit(d, i).to_doubles());
  step.gap = fs_hausdorff(hull_samples(step.rescaled_vertices, grid), hull_samples(limit, grid));
  return step;
}

bool preserves(const PolytopeDomain& domain, const ProjMap& g) {
  if (g.dim() != domain.ambient_dim()) return false;
  const auto& verts = domain.vertices();
  std::vector<bool> hit(verts.size(), false);
  for (const auto& v : verts) {
    const HPoint img = g(v);
    bool found = false;
    for (std::size_t j = 0; j < verts.size(); ++j) {
      if (!hit[j] && img == verts[j]) {
        hit[j] = true;
        found = true;
        break;
      }
    }
    if (!found) return false;
  }
  return domain.locate(g(HPoint(domain.barycenter(domain.all_vertices())))).kind == Location::Interior;
}

OrbitReport orbit_sample(const PolytopeDomain& domain, const std::vector<ProjMap>& gens, const HPoint& basepoint,
                         std::size_t max_word_length, double eps, std::size_t probes, std::uint64_t seed) {
  for (const auto& g : gens)
    if (!preserves(domain, g)) fail(ErrorKind::NonPreserving, "generator does not preserve the domain");
  if (domain.locate(basepoint).kind != Location::Interior) fail(ErrorKind::NotInterior, "basepoint must be interior");
  std::vector<ProjMap> letters = gens;
  for (const auto& g : gens) letters.push_back(g.inverse());

  OrbitReport rep;
  std::set<std::string> seen{basepoint.key()};
  rep.points.push_back(basepoint.canonical());
  rep.word_length.push_back(0);
  std::size_t layer_begin = 0;
  for (std::size_t len = 1; len <= max_word_length; ++len) {
    const std::size_t layer_end = rep.points.size();
    const std::size_t count = (layer_end - layer_begin) * letters.size();
    std::vector<HPoint> images(count, basepoint);
    parallel_for(count, [&](std::size_t k) {
      images[k] = letters[k % letters.size()](rep.points[layer_begin + k / letters.size()]).canonical();
    });
    for (auto& img : images) {
      if (seen.insert(img.key()).second) {
        rep.points.push_back(std::move(img));
        rep.word_length.push_back(len);
      }
    }
    layer_begin = layer_end;
  }

  for (const auto& p : rep.points) {
    const PointD x = p.to_doubles();
    VertexMask face = domain.all_vertices();
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t f = 0; f < domain.facets_d().size(); ++f) {
      const double dist = fubini_study_to_hyperplane(domain.facets_d()[f], x);
      best = std::min(best, dist);
      if (dist <= eps) face &= domain.facet_masks()[f];
    }
    if (best <= eps && face != 0 && face != domain.all_vertices()) rep.limit.push_back({p, face, best});
  }

  rep.probes = probes;
  if (rep.limit.empty() || probes == 0) return rep;
  std::vector<PointD> gens_d;
  for (const auto& l : rep.limit) gens_d.push_back(linalg::to_doubles(domain.normalized_lift(l.point)));
  std::mt19937_64 rng(seed);
  std::vector<PointD> probe_pts;
  for (std::size_t k = 0; k < probes; ++k) probe_pts.push_back(domain.normalize(sample_interior(domain, rng).to_doubles()));
  std::vector<char> inside(probes, 0);
  parallel_for(probes, [&](std::size_t k) {
    lp::Problem prob;
    prob.num_vars = gens_d.size();
    prob.objective.assign(gens_d.size(), 0.0);
    for (std::size_t c = 0; c < domain.ambient_dim(); ++c) {
      lp::Constraint row{std::vector<double>(gens_d.size()), lp::Relation::Equal, probe_pts[k][c]};
      for (std::size_t i = 0; i < gens_d.size(); ++i) row.coeffs[i] = gens_d[i][c];
      prob.constraints.push_back(std::move(row));
    }
    inside[k] = lp::maximize(prob).status == lp::Status::Optimal;
  });
  rep.core_fraction = static_cast<double>(std::count(inside.begin(), inside.end(), 1)) / static_cast<double>(probes);
  return rep;
}

LatticeReport stabilizer_lattice(const std::vector<HPoint>& vertices, const std::vector<ProjMap>& gens) {
  if (vertices.empty()) fail(ErrorKind::InvalidInput, "no vertices");
  LatticeReport rep;
  const std::size_t k = vertices.size() - 1;
  for (const auto& g : gens) {
    if (g.dim() != vertices.front().dim()) fail(ErrorKind::InvalidInput, "generator dimension mismatch");
    std::vector<Rational> lambda;
    for (const auto& v : vertices) {
      const Vector img = g.apply(v.coords());
      if (!linalg::proportional(img, v.coords())) fail(ErrorKind::NotFixingVertices, "generator moves a vertex");
      std::size_t j = 0;
      while (v[j] == 0) ++j;
      lambda.push_back(img[j] / v[j]);
    }
    std::vector<double> row;
    for (std::size_t i = 1; i <= k; ++i) row.push_back(log_rational(boost::multiprecision::abs(lambda[i] / lambda[0])));
    rep.log_vectors.push_back(std::move(row));
  }
  auto rank_of = [&](const std::vector<std::size_t>& rows) -> std::size_t {
    if (rows.empty() || k == 0) return 0;
    Eigen::MatrixXd m(rows.size(), k);
    for (std::size_t r = 0; r < rows.size(); ++r)
      for (std::size_t c = 0; c < k; ++c) m(r, c) = rep.log_vectors[rows[r]][c];
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(m);
    qr.setThreshold(1e-9);
    return static_cast<std::size_t>(qr.rank());
  };
  for (std::size_t i = 0; i < rep.log_vectors.size(); ++i) {
    auto trial = rep.basis;
    trial.push_back(i);
    if (rank_of(trial) == trial.size()) rep.basis = std::move(trial);
  }
  rep.rank = rep.basis.size();
  return rep;
}

}  // namespace hilbertlab
