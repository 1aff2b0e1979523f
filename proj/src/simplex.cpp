#include "hilbertlab/simplex.hpp"
#include "hilbertlab/error.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace hilbertlab {
namespace {

Vector sum_of(const Matrix& rows, std::size_t skip = static_cast<std::size_t>(-1)) {
  Vector out(rows.front().size(), Rational(0));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (i == skip) continue;
    for (std::size_t j = 0; j < out.size(); ++j) out[j] += rows[i][j];
  }
  return out;
}

/// Coefficients with a consistent strict sign, flipped positive.
std::optional<Vector> positive_coefficients(const EmbeddedSimplex& s, const HPoint& x) {
  auto c = s.coefficients(x.coords());
  if (!c) return std::nullopt;
  const int sg = sign(c->front());
  if (sg == 0) return std::nullopt;
  for (auto& v : *c) {
    if (sign(v) != sg) return std::nullopt;
    if (sg < 0) v = -v;
  }
  return c;
}

}  // namespace

EmbeddedSimplex EmbeddedSimplex::recognize(DomainPtr domain, std::vector<HPoint> vertices) {
  if (!domain) fail(ErrorKind::InvalidInput, "simplex without a domain");
  if (vertices.empty()) fail(ErrorKind::InvalidInput, "simplex needs at least one vertex");
  EmbeddedSimplex s;
  s.domain_ = std::move(domain);
  const auto& dom = *s.domain_;
  for (const auto& v : vertices) {
    if (v.dim() != dom.ambient_dim()) fail(ErrorKind::InvalidInput, "vertex dimension does not match the domain");
    const auto loc = dom.locate(v);
    if (loc.kind == Location::Outside) fail(ErrorKind::InvalidInput, "vertex outside the closed domain");
    s.faces_.push_back(loc.face);
    s.lifts_.push_back(dom.normalized_lift(v));
  }
  if (linalg::rank(s.lifts_) != vertices.size()) fail(ErrorKind::DependentVertices, "simplex vertices are linearly dependent");
  if (dom.locate(HPoint(sum_of(s.lifts_))).kind != Location::Interior)
    fail(ErrorKind::EmptyInterior, "open simplex misses the domain");
  if (vertices.size() >= 2) {
    for (std::size_t j = 0; j < vertices.size(); ++j) {
      if (dom.locate(HPoint(sum_of(s.lifts_, j))).kind == Location::Interior)
        fail(ErrorKind::InteriorLeak, "face opposite vertex " + std::to_string(j) + " meets the open domain");
    }
  }
  s.vertices_ = std::move(vertices);
  s.span_ = LinSubspace(dom.ambient_dim(), s.lifts_);
  Matrix coords;
  for (const auto& l : s.lifts_) coords.push_back(s.span_.coordinates(l));
  s.to_coeffs_ = linalg::inverse(coords);
  return s;
}

std::optional<Vector> EmbeddedSimplex::coefficients(std::span<const Rational> v) const {
  if (!span_.contains(v)) return std::nullopt;
  const Vector c = span_.coordinates(v);
  Vector out(c.size(), Rational(0));
  for (std::size_t m = 0; m < c.size(); ++m) {
    if (c[m] == 0) continue;
    for (std::size_t l = 0; l < out.size(); ++l) out[l] += c[m] * to_coeffs_[m][l];
  }
  return out;
}

bool EmbeddedSimplex::contains(const HPoint& x) const {
  return x.dim() == domain_->ambient_dim() && positive_coefficients(*this, x).has_value();
}

HPoint EmbeddedSimplex::point(std::span<const Rational> coeffs) const {
  if (coeffs.size() != lifts_.size()) fail(ErrorKind::InvalidInput, "coefficient count does not match the simplex");
  Vector out(domain_->ambient_dim(), Rational(0));
  for (std::size_t l = 0; l < lifts_.size(); ++l)
    for (std::size_t j = 0; j < out.size(); ++j) out[j] += coeffs[l] * lifts_[l][j];
  return HPoint(std::move(out));
}

PointD EmbeddedSimplex::point_d(std::span<const double> coeffs) const {
  PointD out(domain_->ambient_dim(), 0.0);
  for (std::size_t l = 0; l < lifts_.size(); ++l) {
    const auto lift = linalg::to_doubles(lifts_[l]);
    for (std::size_t j = 0; j < out.size(); ++j) out[j] += coeffs[l] * lift[j];
  }
  return out;
}

std::string EmbeddedSimplex::key() const {
  std::vector<std::string> keys;
  for (const auto& v : vertices_) keys.push_back(v.key());
  std::sort(keys.begin(), keys.end());
  std::string out;
  for (const auto& k : keys) out += k + ";";
  return out;
}

Rational simplex_q(std::span<const Rational> x, std::span<const Rational> y) {
  Rational hi = x[0] / y[0];
  Rational lo = hi;
  for (std::size_t i = 1; i < x.size(); ++i) {
    Rational r = x[i] / y[i];
    if (r > hi) hi = r;
    if (r < lo) lo = r;
  }
  return hi / lo;
}

HilbertLength simplex_distance(const EmbeddedSimplex& s, const HPoint& x, const HPoint& y) {
  const auto cx = positive_coefficients(s, x);
  const auto cy = positive_coefficients(s, y);
  if (!cx || !cy) fail(ErrorKind::NotInSimplex, "point is not in the open simplex");
  return HilbertLength::from_q(simplex_q(*cx, *cy));
}

FlatCoords flat_coords_from(std::span<const Rational> coeffs) {
  FlatCoords out;
  for (std::size_t i = 1; i < coeffs.size(); ++i) {
    out.ratios.push_back(coeffs[i] / coeffs[0]);
    out.logs.push_back(log_rational(out.ratios.back()));
  }
  return out;
}

FlatCoords flat_coords(const EmbeddedSimplex& s, const HPoint& x) {
  const auto c = positive_coefficients(s, x);
  if (!c) fail(ErrorKind::NotInSimplex, "point is not in the open simplex");
  return flat_coords_from(*c);
}

HilbertLength flat_distance(const FlatCoords& u, const FlatCoords& v) {
  if (u.ratios.size() != v.ratios.size()) fail(ErrorKind::InvalidInput, "flat coordinates of different dimension");
  Rational hi(1);
  Rational lo(1);
  for (std::size_t i = 0; i < u.ratios.size(); ++i) {
    Rational r = u.ratios[i] / v.ratios[i];
    if (r > hi) hi = r;
    if (r < lo) lo = r;
  }
  return HilbertLength::from_q(hi / lo);
}

double flat_distance(std::span<const double> u, std::span<const double> v) {
  double hi = 0;
  double lo = 0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    hi = std::max(hi, u[i] - v[i]);
    lo = std::min(lo, u[i] - v[i]);
  }
  return 0.5 * (hi - lo);
}

std::string to_string(Status s) {
  switch (s) {
    case Status::Verified: return "verified";
    case Status::Refuted: return "refuted";
    case Status::Unknown: return "unknown";
  }
  return "unknown";
}

std::optional<std::vector<std::size_t>> are_parallel(const EmbeddedSimplex& a, const EmbeddedSimplex& b) {
  if (a.dim() != b.dim() || a.domain_ptr() != b.domain_ptr()) return std::nullopt;
  const auto& fa = a.vertex_faces();
  const auto& fb = b.vertex_faces();
  std::vector<std::size_t> perm(fa.size());
  std::vector<bool> used(fb.size(), false);
  // Lexicographically first matching by backtracking.
  auto search = [&](auto&& self, std::size_t i) -> bool {
    if (i == fa.size()) return true;
    for (std::size_t j = 0; j < fb.size(); ++j) {
      if (used[j] || fa[i] != fb[j]) continue;
      used[j] = true;
      perm[i] = j;
      if (self(self, i + 1)) return true;
      used[j] = false;
    }
    return false;
  };
  if (!search(search, 0)) return std::nullopt;
  return perm;
}

std::vector<std::vector<std::size_t>> parallel_classes(const std::vector<EmbeddedSimplex>& members) {
  std::vector<std::vector<std::size_t>> classes;
  for (std::size_t i = 0; i < members.size(); ++i) {
    bool placed = false;
    for (auto& c : classes) {
      if (are_parallel(members[c.front()], members[i])) {
        c.push_back(i);
        placed = true;
        break;
      }
    }
    if (!placed) classes.push_back({i});
  }
  return classes;
}

SlideResult slide(const EmbeddedSimplex& s, const std::map<std::size_t, HPoint>& replacements) {
  std::vector<HPoint> verts = s.vertices();
  HilbertLength bound;
  for (const auto& [j, w] : replacements) {
    if (j >= verts.size()) fail(ErrorKind::InvalidInput, "replacement index out of range");
    const auto loc = s.domain().locate(w);
    if (loc.kind == Location::Outside || loc.face != s.vertex_faces()[j])
      fail(ErrorKind::NotInFace, "replacement for vertex " + std::to_string(j) + " leaves its face");
    bound = bound + face_distance(s.domain(), s.vertices()[j], w);
    verts[j] = w;
  }
  return {EmbeddedSimplex::recognize(s.domain_ptr(), std::move(verts)), bound};
}

bool opposite(const EmbeddedSimplex& s, VertexMask f1, VertexMask f2) {
  const std::size_t n = s.vertices().size();
  const VertexMask all = n >= 64 ? ~VertexMask{0} : (VertexMask{1} << n) - 1;
  for (VertexMask f : {f1, f2})
    if (f == 0 || f == all || (f & ~all) != 0) fail(ErrorKind::InvalidInput, "faces must be proper faces of the simplex");
  return (f1 & f2) == 0 && (f1 | f2) == all;
}

namespace {

VertexMask ambient_face(const DomainPtr& domain, const EmbeddedSimplex& s) {
  const auto loc = domain->locate(HPoint(sum_of(s.lifts())));
  if (loc.kind != Location::Boundary) fail(ErrorKind::InvalidInput, "joined simplex must lie in a boundary face");
  if (!(domain->face_domain(loc.face)->span() == s.span() || s.domain().span() == domain->face_domain(loc.face)->span()))
    fail(ErrorKind::InvalidInput, "joined simplex is not properly embedded in its face");
  return loc.face;
}

}  // namespace

EmbeddedSimplex join_opposite(const DomainPtr& domain, const EmbeddedSimplex& s1, const EmbeddedSimplex& s2) {
  const VertexMask f1 = ambient_face(domain, s1);
  const VertexMask f2 = ambient_face(domain, s2);
  if ((f1 & f2) != 0) fail(ErrorKind::CrossSegmentInBoundary, "face closures intersect");
  if (domain->in_common_facet(f1 | f2)) fail(ErrorKind::CrossSegmentInBoundary, "cross segments lie in a facet");
  std::vector<HPoint> verts = s1.vertices();
  verts.insert(verts.end(), s2.vertices().begin(), s2.vertices().end());
  return EmbeddedSimplex::recognize(domain, std::move(verts));
}

EmbeddedSimplex canonicalize(const DomainPtr& domain, std::span<const HPoint> core, const EmbeddedSimplex& s) {
  std::vector<HPoint> verts;
  for (std::size_t j = 0; j < s.vertices().size(); ++j) {
    const VertexMask face = s.vertex_faces()[j];
    std::vector<HPoint> pts;
    for (const auto& k : core) {
      const auto loc = domain->locate(k);
      if (loc.kind == Location::Outside || (loc.face & ~face) != 0) continue;
      if (loc.face != face)
        fail(ErrorKind::FaceIntersectionUnbounded, "core meets the boundary of the face of vertex " + std::to_string(j));
      pts.push_back(k);
    }
    if (pts.empty()) fail(ErrorKind::FaceIntersectionUnbounded, "core misses the face of vertex " + std::to_string(j));
    verts.push_back(center_of_mass(*domain->face_domain(face), pts));
  }
  return EmbeddedSimplex::recognize(domain, std::move(verts));
}

PointD sample_simplex(const EmbeddedSimplex& s, std::mt19937_64& rng, double radius) {
  std::uniform_real_distribution<double> u(-radius, radius);
  std::vector<double> c(s.vertices().size(), 1.0);
  for (std::size_t i = 1; i < c.size(); ++i) c[i] = std::exp(u(rng));
  return s.point_d(c);
}

}  // namespace hilbertlab
