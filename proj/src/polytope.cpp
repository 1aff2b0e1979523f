#include "hilbertlab/domain.hpp"
#include "hilbertlab/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

namespace hilbertlab {
namespace {

std::vector<std::vector<std::size_t>> independent_subsets(const Matrix& points, std::size_t size) {
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> chosen;
  // Depth-first over increasing index tuples, pruning dependent prefixes.
  auto recurse = [&](auto&& self, std::size_t start) -> void {
    if (chosen.size() == size) {
      out.push_back(chosen);
      return;
    }
    for (std::size_t i = start; i + (size - chosen.size()) <= points.size(); ++i) {
      chosen.push_back(i);
      Matrix rows;
      for (auto c : chosen) rows.push_back(points[c]);
      if (linalg::rank(rows) == chosen.size()) self(self, i + 1);
      chosen.pop_back();
    }
  };
  recurse(recurse, 0);
  return out;
}

}  // namespace

std::shared_ptr<const PolytopeDomain> PolytopeDomain::create(std::vector<HPoint> vertices) {
  return create_with_facets(std::move(vertices), {});
}

std::shared_ptr<const PolytopeDomain> PolytopeDomain::create_with_facets(std::vector<HPoint> vertices, Matrix facets) {
  if (vertices.empty()) fail(ErrorKind::DegenerateDomain, "a polytope needs at least one vertex");
  if (vertices.size() > kMaxVertices) fail(ErrorKind::DegenerateDomain, "more than 64 vertices");
  const std::size_t d = vertices.front().dim();
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    if (vertices[i].dim() != d) fail(ErrorKind::DegenerateDomain, "vertices have mixed dimensions");
    for (std::size_t j = 0; j < i; ++j) {
      if (vertices[i] == vertices[j]) fail(ErrorKind::DegenerateDomain, "repeated vertex");
    }
  }
  std::shared_ptr<PolytopeDomain> p(new PolytopeDomain());
  p->ambient_ = d;
  p->vertices_ = std::move(vertices);
  Matrix raw;
  for (const auto& v : p->vertices_) raw.push_back(v.coords());
  p->span_ = LinSubspace(d, raw);
  const std::size_t k = p->span_.dim();
  const std::size_t n = p->vertices_.size();
  p->all_ = n == kMaxVertices ? ~VertexMask{0} : ((VertexMask{1} << n) - 1);

  auto mask_of_zeros = [&](const Vector& f) {
    VertexMask m = 0;
    for (std::size_t i = 0; i < n; ++i)
      if (linalg::dot(f, raw[i]) == 0) m |= VertexMask{1} << i;
    return m;
  };

  if (k == 1) {
    if (n != 1) fail(ErrorKind::DegenerateDomain, "vertices are projectively equal");
    Vector c = linalg::primitive(raw[0]);
    if (linalg::dot(c, raw[0]) < 0)
      for (auto& x : c) x = -x;
    p->chart_ = Chart(std::move(c));
  } else if (facets.empty()) {
    const auto& pivots = p->span_.pivots();
    Matrix intrinsic;
    for (const auto& v : raw) intrinsic.push_back(p->span_.coordinates(v));
    std::map<VertexMask, Vector> found;
    for (const auto& subset : independent_subsets(intrinsic, k - 1)) {
      Matrix rows;
      for (auto i : subset) rows.push_back(intrinsic[i]);
      Matrix normal = linalg::nullspace(rows, k);
      const Vector& phi = normal.front();
      int sgn = 0;
      bool mixed = false;
      VertexMask zeros = 0;
      for (std::size_t i = 0; i < n; ++i) {
        const int s = sign(linalg::dot(phi, intrinsic[i]));
        if (s == 0) {
          zeros |= VertexMask{1} << i;
        } else if (sgn == 0) {
          sgn = s;
        } else if (s != sgn) {
          mixed = true;
          break;
        }
      }
      if (mixed || sgn == 0 || found.count(zeros)) continue;
      Vector f(d, Rational(0));
      for (std::size_t i = 0; i < k; ++i) f[pivots[i]] = sgn > 0 ? phi[i] : Rational(-phi[i]);
      found.emplace(zeros, linalg::primitive(f));
    }
    for (auto& [mask, f] : found) p->facets_.push_back(std::move(f));
  } else {
    for (auto& f : facets) {
      if (f.size() != d) fail(ErrorKind::DegenerateDomain, "facet functional of wrong length");
      Vector g = linalg::primitive(f);
      for (const auto& v : raw)
        if (linalg::dot(g, v) < 0) fail(ErrorKind::DegenerateDomain, "supplied facet is negative on a vertex");
      p->facets_.push_back(std::move(g));
    }
  }

  if (k >= 2) {
    std::sort(p->facets_.begin(), p->facets_.end(), [](const Vector& a, const Vector& b) { return a > b; });
    p->facets_.erase(std::unique(p->facets_.begin(), p->facets_.end()), p->facets_.end());
    Vector chart(d, Rational(0));
    for (const auto& f : p->facets_) {
      const VertexMask m = mask_of_zeros(f);
      Matrix incident;
      for (std::size_t i = 0; i < n; ++i)
        if (m >> i & 1) incident.push_back(raw[i]);
      if (linalg::rank(incident) != k - 1) fail(ErrorKind::DegenerateDomain, "facet is not supported by k-1 independent vertices");
      p->facet_masks_.push_back(m);
      for (std::size_t j = 0; j < d; ++j) chart[j] += f[j];
    }
    chart = linalg::primitive(chart);
    for (const auto& v : raw) {
      if (linalg::dot(chart, v) <= 0) fail(ErrorKind::DegenerateDomain, "vertex lifts do not span a properly convex cone");
    }
    // Each vertex must be cut out by the facets through it.
    for (std::size_t i = 0; i < n; ++i) {
      Matrix normals;
      for (std::size_t f = 0; f < p->facets_.size(); ++f)
        if (p->facet_masks_[f] >> i & 1) normals.push_back(p->span_.coordinates(p->facets_[f]));
      if (linalg::rank(normals) != k - 1) fail(ErrorKind::DegenerateDomain, "vertex " + std::to_string(i) + " is not extreme");
    }
    p->chart_ = Chart(std::move(chart));
  }
  p->finish_construction();
  return p;
}

void PolytopeDomain::finish_construction() {
  lifts_.clear();
  for (const auto& v : vertices_) lifts_.push_back(chart_.dehomogenize(v));
  chart_d_ = linalg::to_doubles(chart_.functional());
  facets_d_.clear();
  for (const auto& f : facets_) facets_d_.push_back(linalg::to_doubles(f));
}

Vector PolytopeDomain::facet_values(std::span<const Rational> v) const {
  Vector out;
  out.reserve(facets_.size());
  for (const auto& f : facets_) out.push_back(linalg::dot(f, v));
  return out;
}

LocateResult PolytopeDomain::locate(const HPoint& x) const {
  if (x.dim() != ambient_) fail(ErrorKind::InvalidInput, "point dimension does not match the domain");
  if (!span_.contains(x)) return {};
  const Rational c = chart_.value(x.coords());
  if (c == 0) return {};
  const bool flip = c < 0;
  VertexMask face = all_;
  bool boundary = false;
  for (std::size_t i = 0; i < facets_.size(); ++i) {
    Rational v = linalg::dot(facets_[i], x.coords());
    if (flip) v = -v;
    if (v < 0) return {};
    if (v == 0) {
      boundary = true;
      face &= facet_masks_[i];
    }
  }
  return {boundary ? Location::Boundary : Location::Interior, face};
}

VertexMask PolytopeDomain::face_closure(VertexMask vertices) const {
  VertexMask out = all_;
  for (auto m : facet_masks_)
    if ((vertices & ~m) == 0) out &= m;
  return out;
}

bool PolytopeDomain::in_common_facet(VertexMask vertices) const {
  return std::any_of(facet_masks_.begin(), facet_masks_.end(), [&](VertexMask m) { return (vertices & ~m) == 0; });
}

std::vector<VertexMask> PolytopeDomain::face_lattice() const {
  std::set<VertexMask> faces(facet_masks_.begin(), facet_masks_.end());
  std::vector<VertexMask> frontier(faces.begin(), faces.end());
  while (!frontier.empty()) {
    std::vector<VertexMask> next;
    for (auto a : frontier)
      for (auto f : facet_masks_) {
        const VertexMask m = a & f;
        if (m != 0 && faces.insert(m).second) next.push_back(m);
      }
    frontier = std::move(next);
  }
  std::vector<VertexMask> out(faces.begin(), faces.end());
  std::sort(out.begin(), out.end(), [](VertexMask a, VertexMask b) {
    return popcount(a) != popcount(b) ? popcount(a) < popcount(b) : a < b;
  });
  return out;
}

std::shared_ptr<const PolytopeDomain> PolytopeDomain::face_domain(VertexMask face) const {
  if (face == all_) return shared_from_this();
  if (face == 0 || (face & ~all_) != 0) fail(ErrorKind::InvalidInput, "face vertex set out of range");
  std::lock_guard lock(face_mutex_);
  auto it = face_cache_.find(face);
  if (it != face_cache_.end()) return it->second;
  std::vector<HPoint> verts;
  for (std::size_t i = 0; i < vertices_.size(); ++i)
    if (face >> i & 1) verts.emplace_back(lifts_[i]);
  auto dom = create(std::move(verts));
  face_cache_.emplace(face, dom);
  return dom;
}

Vector PolytopeDomain::barycenter(VertexMask vertices) const {
  Vector out(ambient_, Rational(0));
  for (std::size_t i = 0; i < lifts_.size(); ++i)
    if (vertices >> i & 1)
      for (std::size_t j = 0; j < ambient_; ++j) out[j] += lifts_[i][j];
  return out;
}

std::vector<double> PolytopeDomain::facet_values(std::span<const double> x) const {
  double c = 0;
  for (std::size_t j = 0; j < ambient_; ++j) c += chart_d_[j] * x[j];
  const double s = c < 0 ? -1.0 : 1.0;
  std::vector<double> out;
  out.reserve(facets_d_.size());
  for (const auto& f : facets_d_) {
    double v = 0;
    for (std::size_t j = 0; j < ambient_; ++j) v += f[j] * x[j];
    out.push_back(s * v);
  }
  return out;
}

bool PolytopeDomain::is_interior(std::span<const double> x) const {
  double c = 0;
  for (std::size_t j = 0; j < ambient_; ++j) c += chart_d_[j] * x[j];
  if (c == 0) return false;
  for (double v : facet_values(x))
    if (!(v > 0)) return false;
  return true;
}

std::pair<double, double> PolytopeDomain::chord_params(std::span<const double> x, std::span<const double> y) const {
  const auto fx = facet_values(x);
  const auto fy = facet_values(y);
  double ta = -std::numeric_limits<double>::infinity();
  double tb = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < fx.size(); ++i) {
    const double diff = fx[i] - fy[i];
    if (diff == 0) continue;
    const double t = fx[i] / diff;
    if (diff < 0) ta = std::max(ta, t);
    else tb = std::min(tb, t);
  }
  return {ta, tb};
}

double PolytopeDomain::distance(std::span<const double> x, std::span<const double> y) const {
  if (facets_d_.empty()) return 0.0;
  const auto fx = facet_values(x);
  const auto fy = facet_values(y);
  double hi = -std::numeric_limits<double>::infinity();
  double lo = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < fx.size(); ++i) {
    if (!(fx[i] > 0) || !(fy[i] > 0)) return std::numeric_limits<double>::infinity();
    const double r = std::log(fx[i]) - std::log(fy[i]);
    hi = std::max(hi, r);
    lo = std::min(lo, r);
  }
  return 0.5 * (hi - lo);
}

Face::Face(DomainPtr parent, VertexMask vertices) : parent_(std::move(parent)), vertices_(vertices) {
  if (!parent_) fail(ErrorKind::InvalidInput, "face without a parent domain");
  if (vertices_ == 0 || (vertices_ & ~parent_->all_vertices()) != 0) fail(ErrorKind::InvalidInput, "face vertex set out of range");
}

bool Face::contains(const HPoint& x) const {
  const auto loc = parent_->locate(x);
  return loc.kind != Location::Outside && loc.face == vertices_;
}

}  // namespace hilbertlab
