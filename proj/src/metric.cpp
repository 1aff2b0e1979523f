#include "hilbertlab/domain.hpp"
#include "hilbertlab/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace hilbertlab {

HilbertLength HilbertLength::from_q(Rational q) {
  if (q < 1) fail(ErrorKind::OutOfRange, "cross ratio below one");
  HilbertLength out;
  out.value_ = 0.5 * log_rational(q);
  out.q_ = std::move(q);
  return out;
}

HilbertLength HilbertLength::approx(double value) {
  if (!(value >= 0)) fail(ErrorKind::OutOfRange, "negative or NaN length");
  HilbertLength out;
  out.q_.reset();
  out.value_ = value;
  return out;
}

const Rational& HilbertLength::q() const {
  if (!q_) fail(ErrorKind::InvalidInput, "length is not exact");
  return *q_;
}

HilbertLength operator+(const HilbertLength& a, const HilbertLength& b) {
  if (a.q_ && b.q_) return HilbertLength::from_q(*a.q_ * *b.q_);
  return HilbertLength::approx(a.value_ + b.value_);
}

std::partial_ordering operator<=>(const HilbertLength& a, const HilbertLength& b) {
  if (a.q_ && b.q_) {
    if (*a.q_ < *b.q_) return std::partial_ordering::less;
    if (*a.q_ > *b.q_) return std::partial_ordering::greater;
    return std::partial_ordering::equivalent;
  }
  return a.value_ <=> b.value_;
}

bool operator==(const HilbertLength& a, const HilbertLength& b) {
  if (a.q_ && b.q_) return *a.q_ == *b.q_;
  return a.value_ == b.value_;
}

PointD MetricDomain::normalize(std::span<const double> x) const {
  const auto& c = chart_functional();
  double v = 0;
  for (std::size_t i = 0; i < x.size(); ++i) v += c[i] * x[i];
  if (v == 0) fail(ErrorKind::NoCommonChart, "chart vanishes at point");
  PointD out(x.begin(), x.end());
  for (auto& e : out) e /= v;
  return out;
}

PointD MetricDomain::lerp(std::span<const double> x, std::span<const double> y, double t) const {
  PointD out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = (1 - t) * x[i] + t * y[i];
  return out;
}

double MetricDomain::distance(std::span<const double> x, std::span<const double> y) const {
  const PointD xn = normalize(x);
  const PointD yn = normalize(y);
  if (xn == yn) return 0.0;
  const auto [ta, tb] = chord_params(xn, yn);
  if (!std::isfinite(ta) || !std::isfinite(tb)) return std::numeric_limits<double>::infinity();
  return 0.5 * (std::log(tb) + std::log1p(-ta) - std::log(-ta) - std::log(tb - 1));
}

PointD MetricDomain::geodesic(std::span<const double> x, std::span<const double> y, double s) const {
  const PointD xn = normalize(x);
  const PointD yn = normalize(y);
  if (xn == yn || s <= 0) return xn;
  const double h = distance(xn, yn);
  if (s >= h) return yn;
  const auto [ta, tb] = chord_params(xn, yn);
  const double w = std::exp(-2 * s);
  double t;
  if (!std::isfinite(tb)) t = ta * (w - 1) / (-ta);  // unbounded side: limit of the formula
  else if (!std::isfinite(ta)) t = tb * (1 - w);
  else t = ta * tb * (w - 1) / (tb * w - ta);
  return lerp(xn, yn, t);
}

LocateResult locate(const PolytopeDomain& domain, const HPoint& x) { return domain.locate(x); }

namespace {

struct ExactChord {
  Vector x;
  Vector y;
  Rational ta;
  Rational tb;
};

ExactChord exact_chord(const PolytopeDomain& domain, const HPoint& x, const HPoint& y) {
  ExactChord c{domain.normalized_lift(x), domain.normalized_lift(y), Rational(0), Rational(0)};
  const Vector fx = domain.facet_values(c.x);
  const Vector fy = domain.facet_values(c.y);
  bool have_a = false;
  bool have_b = false;
  for (std::size_t i = 0; i < fx.size(); ++i) {
    const Rational diff = fx[i] - fy[i];
    if (diff == 0) continue;
    const Rational t = fx[i] / diff;
    if (diff < 0) {
      if (!have_a || t > c.ta) c.ta = t;
      have_a = true;
    } else {
      if (!have_b || t < c.tb) c.tb = t;
      have_b = true;
    }
  }
  if (!have_a || !have_b) fail(ErrorKind::DegenerateDomain, "line leaves no boundary point on one side");
  return c;
}

Vector point_at(const ExactChord& c, const Rational& t) {
  Vector out(c.x.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = c.x[i] + t * (c.y[i] - c.x[i]);
  return out;
}

void require_interior(const PolytopeDomain& domain, const HPoint& x, const char* what) {
  if (domain.locate(x).kind != Location::Interior) fail(ErrorKind::NotInterior, std::string(what) + " is not in the open domain");
}

DomainPtr self(const PolytopeDomain& domain) { return domain.shared_from_this(); }

}  // namespace

std::pair<ChordEnd, ChordEnd> chord(const PolytopeDomain& domain, const HPoint& x, const HPoint& y) {
  require_interior(domain, x, "x");
  require_interior(domain, y, "y");
  if (x == y) fail(ErrorKind::DegenerateConfiguration, "chord needs distinct points");
  const ExactChord c = exact_chord(domain, x, y);
  HPoint a(point_at(c, c.ta));
  HPoint b(point_at(c, c.tb));
  Face fa(self(domain), domain.locate(a).face);
  Face fb(self(domain), domain.locate(b).face);
  return {ChordEnd{std::move(a), std::move(fa)}, ChordEnd{std::move(b), std::move(fb)}};
}

HilbertLength hilbert_distance(const PolytopeDomain& domain, const HPoint& x, const HPoint& y) {
  require_interior(domain, x, "x");
  require_interior(domain, y, "y");
  if (x == y) return HilbertLength();
  const ExactChord c = exact_chord(domain, x, y);
  return HilbertLength::from_q(c.tb * (1 - c.ta) / ((-c.ta) * (c.tb - 1)));
}

HilbertLength face_distance(const PolytopeDomain& domain, const HPoint& x, const HPoint& y) {
  const auto lx = domain.locate(x);
  const auto ly = domain.locate(y);
  if (lx.kind == Location::Outside || ly.kind == Location::Outside || lx.face != ly.face)
    fail(ErrorKind::NotInFace, "points do not lie in a common open face");
  return hilbert_distance(*domain.face_domain(lx.face), x, y);
}

HPoint geodesic_point(const PolytopeDomain& domain, const HPoint& x, const HPoint& y, const HilbertLength& s) {
  require_interior(domain, x, "x");
  require_interior(domain, y, "y");
  if (x == y) {
    if (s.value() != 0) fail(ErrorKind::OutOfRange, "positive length along a degenerate segment");
    return x;
  }
  const ExactChord c = exact_chord(domain, x, y);
  const Rational qxy = c.tb * (1 - c.ta) / ((-c.ta) * (c.tb - 1));
  if (s.is_exact()) {
    const Rational& qs = s.q();
    if (qs > qxy) fail(ErrorKind::OutOfRange, "length exceeds the segment");
    return HPoint(point_at(c, c.ta * c.tb * (1 - qs) / (c.tb - qs * c.ta)));
  }
  const double h = 0.5 * log_rational(qxy);
  if (s.value() > h * (1 + 1e-12) + 1e-15) fail(ErrorKind::OutOfRange, "length exceeds the segment");
  const double ta = to_double(c.ta);
  const double tb = to_double(c.tb);
  const double w = std::exp(-2 * std::min(s.value(), h));
  double t = ta * tb * (w - 1) / (tb * w - ta);
  t = std::clamp(t, 0.0, 1.0);
  return HPoint(point_at(c, from_double(t)));
}

Face face_of(const PolytopeDomain& domain, const HPoint& x) {
  const auto loc = domain.locate(x);
  if (loc.kind != Location::Boundary) fail(ErrorKind::NotOnBoundary, "point is not on the boundary");
  return Face(self(domain), loc.face);
}

SupportingData supporting_data(const PolytopeDomain& domain, const HPoint& x) {
  if (domain.locate(x).kind != Location::Boundary) fail(ErrorKind::NotOnBoundary, "point is not on the boundary");
  const Vector v = domain.facet_values(domain.normalized_lift(x));
  SupportingData out;
  for (std::size_t i = 0; i < v.size(); ++i)
    if (v[i] == 0) out.facets.push_back(i);
  out.is_c1 = out.facets.size() == 1;
  return out;
}

bool segment_in_boundary(const PolytopeDomain& domain, const HPoint& a, const HPoint& b) {
  if (domain.locate(a).kind == Location::Outside || domain.locate(b).kind == Location::Outside) return false;
  const Vector fa = domain.facet_values(domain.normalized_lift(a));
  const Vector fb = domain.facet_values(domain.normalized_lift(b));
  for (std::size_t i = 0; i < fa.size(); ++i)
    if (fa[i] == 0 && fb[i] == 0) return true;
  return false;
}

bool half_triangle(const PolytopeDomain& domain, const HPoint& a, const HPoint& b, const HPoint& c) {
  for (const HPoint* p : {&a, &b, &c})
    if (domain.locate(*p).kind == Location::Outside) return false;
  if (a == c || a == b || b == c) return false;
  if (!segment_in_boundary(domain, a, b) || !segment_in_boundary(domain, b, c)) return false;
  const Vector la = domain.normalized_lift(a);
  const Vector lc = domain.normalized_lift(c);
  Vector mid(la.size());
  for (std::size_t i = 0; i < mid.size(); ++i) mid[i] = la[i] + lc[i];
  return domain.locate(HPoint(std::move(mid))).kind == Location::Interior;
}

HilbertLength hausdorff_distance(const PolytopeDomain& domain, std::span<const HPoint> a, std::span<const HPoint> b,
                                 const std::optional<Ball>& restrict_to) {
  std::vector<HPoint> ra;
  std::vector<HPoint> rb;
  auto keep = [&](std::span<const HPoint> in, std::vector<HPoint>& out) {
    for (const auto& p : in) {
      if (!restrict_to || hilbert_distance(domain, restrict_to->center, p) <= restrict_to->radius) out.push_back(p);
    }
  };
  keep(a, ra);
  keep(b, rb);
  if (ra.empty() || rb.empty()) fail(ErrorKind::EmptyAfterRestriction, "a point set is empty");
  auto directed = [&](const std::vector<HPoint>& from, const std::vector<HPoint>& to) {
    HilbertLength worst;
    for (const auto& p : from) {
      std::optional<HilbertLength> best;
      for (const auto& q : to) {
        HilbertLength d = hilbert_distance(domain, p, q);
        if (!best || d < *best) best = std::move(d);
      }
      if (*best > worst) worst = std::move(*best);
    }
    return worst;
  };
  HilbertLength ab = directed(ra, rb);
  HilbertLength ba = directed(rb, ra);
  return ab < ba ? ba : ab;
}

HPoint sample_in_face(const PolytopeDomain& domain, VertexMask face, std::mt19937_64& rng, unsigned max_weight) {
  if (face == 0 || (face & ~domain.all_vertices()) != 0) fail(ErrorKind::InvalidInput, "face vertex set out of range");
  if (max_weight < 1) fail(ErrorKind::InvalidInput, "max_weight must be positive");
  std::uniform_int_distribution<unsigned> weight(1, max_weight);
  const auto& lifts = domain.vertex_lifts();
  Vector out(domain.ambient_dim(), Rational(0));
  for (std::size_t i = 0; i < lifts.size(); ++i) {
    if (!(face >> i & 1)) continue;
    const Rational w(weight(rng));
    for (std::size_t j = 0; j < out.size(); ++j) out[j] += w * lifts[i][j];
  }
  return HPoint(std::move(out));
}

HPoint sample_interior(const PolytopeDomain& domain, std::mt19937_64& rng, unsigned max_weight) {
  return sample_in_face(domain, domain.all_vertices(), rng, max_weight);
}

}  // namespace hilbertlab
