#include "hilbertlab/projective.hpp"

#include "hilbertlab/error.hpp"

namespace hilbertlab {

HPoint::HPoint(Vector coords) : coords_(std::move(coords)) {
  if (coords_.empty() || linalg::is_zero(coords_)) fail(ErrorKind::InvalidInput, "homogeneous coordinates must be nonzero");
}

HPoint::HPoint(std::initializer_list<long> coords) {
  coords_.reserve(coords.size());
  for (long c : coords) coords_.emplace_back(c);
  if (coords_.empty() || linalg::is_zero(coords_)) fail(ErrorKind::InvalidInput, "homogeneous coordinates must be nonzero");
}

HPoint HPoint::sign_normalized() const {
  std::size_t i = 0;
  while (coords_[i] == 0) ++i;
  if (coords_[i] > 0) return *this;
  Vector v = coords_;
  for (auto& x : v) x = -x;
  return HPoint(std::move(v));
}

HPoint HPoint::canonical() const { return HPoint(linalg::primitive(coords_)); }

std::string HPoint::key() const {
  std::string out;
  for (const auto& c : linalg::primitive(coords_)) {
    out += format_rational(c);
    out += ',';
  }
  return out;
}

ProjMap::ProjMap(Matrix matrix) : matrix_(std::move(matrix)) {
  if (matrix_.empty()) fail(ErrorKind::InvalidInput, "empty matrix");
  inverse_ = linalg::inverse(matrix_);
}

ProjMap ProjMap::identity(std::size_t d) { return ProjMap(linalg::identity(d), linalg::identity(d)); }

ProjMap ProjMap::diagonal(const Vector& entries) {
  Matrix m = linalg::identity(entries.size());
  for (std::size_t i = 0; i < entries.size(); ++i) m[i][i] = entries[i];
  return ProjMap(std::move(m));
}

ProjMap ProjMap::permutation(std::span<const std::size_t> image) {
  const std::size_t d = image.size();
  Matrix m(d, Vector(d, Rational(0)));
  for (std::size_t i = 0; i < d; ++i) {
    if (image[i] >= d) fail(ErrorKind::InvalidInput, "permutation index out of range");
    m[image[i]][i] = 1;
  }
  return ProjMap(std::move(m));
}

ProjMap operator*(const ProjMap& a, const ProjMap& b) {
  return ProjMap(linalg::multiply(a.matrix_, b.matrix_), linalg::multiply(b.inverse_, a.inverse_));
}

bool ProjMap::equivalent(const ProjMap& other) const {
  if (dim() != other.dim()) return false;
  Vector a, b;
  for (const auto& row : matrix_) a.insert(a.end(), row.begin(), row.end());
  for (const auto& row : other.matrix_) b.insert(b.end(), row.begin(), row.end());
  return linalg::proportional(a, b);
}

LinSubspace::LinSubspace(std::size_t ambient_dim, const Matrix& spanning_vectors) : ambient_(ambient_dim) {
  for (const auto& v : spanning_vectors) {
    if (v.size() != ambient_dim) fail(ErrorKind::InvalidInput, "subspace vector of wrong length");
  }
  basis_ = linalg::rref(spanning_vectors);
}

bool LinSubspace::contains(std::span<const Rational> v) const {
  if (v.size() != ambient_) return false;
  Vector r(v.begin(), v.end());
  for (std::size_t i = 0; i < basis_.rows.size(); ++i) {
    const Rational c = r[basis_.pivots[i]];
    if (c != 0) r = linalg::add_scaled(r, -c, basis_.rows[i]);
  }
  return linalg::is_zero(r);
}

Vector LinSubspace::coordinates(std::span<const Rational> v) const {
  Vector c;
  c.reserve(basis_.pivots.size());
  for (auto p : basis_.pivots) c.push_back(v[p]);
  return c;
}

bool LinSubspace::contains(const LinSubspace& other) const {
  for (const auto& row : other.basis()) {
    if (!contains(row)) return false;
  }
  return true;
}

Chart::Chart(Vector functional) : functional_(std::move(functional)) {
  if (linalg::is_zero(functional_)) fail(ErrorKind::InvalidInput, "chart functional must be nonzero");
}

Vector Chart::dehomogenize(const HPoint& x) const {
  const Rational c = value(x.coords());
  if (c == 0) fail(ErrorKind::NoCommonChart, "chart functional vanishes at the point");
  Vector out = x.coords();
  for (auto& v : out) v /= c;
  return out;
}

Rational cross_ratio(const HPoint& a, const HPoint& x, const HPoint& y, const HPoint& b) {
  const std::size_t d = a.dim();
  if (x.dim() != d || y.dim() != d || b.dim() != d) fail(ErrorKind::InvalidInput, "cross_ratio: dimension mismatch");
  if (a == b) fail(ErrorKind::DegenerateConfiguration, "cross_ratio: a = b");
  if (linalg::rank({a.coords(), b.coords(), x.coords(), y.coords()}) != 2) {
    fail(ErrorKind::NonCollinear, "cross_ratio: points are not collinear");
  }
  // Two coordinates on which a and b are independent.
  std::size_t i0 = d, j0 = d;
  for (std::size_t i = 0; i < d && i0 == d; ++i)
    for (std::size_t j = i + 1; j < d; ++j)
      if (a[i] * b[j] - a[j] * b[i] != 0) {
        i0 = i;
        j0 = j;
        break;
      }
  const Rational det = a[i0] * b[j0] - a[j0] * b[i0];
  // p = alpha a + beta b; the parameter beta/alpha puts a at 0 and b at infinity.
  auto param = [&](const HPoint& p) {
    Rational alpha = (p[i0] * b[j0] - p[j0] * b[i0]) / det;
    Rational beta = (a[i0] * p[j0] - a[j0] * p[i0]) / det;
    if (alpha == 0 || beta == 0) fail(ErrorKind::DegenerateConfiguration, "cross_ratio: interior point coincides with an endpoint");
    return Rational(beta / alpha);
  };
  return param(y) / param(x);
}

LinSubspace span(std::span<const HPoint> points) {
  if (points.empty()) fail(ErrorKind::InvalidInput, "span of an empty list");
  Matrix rows;
  rows.reserve(points.size());
  for (const auto& p : points) rows.push_back(p.coords());
  return LinSubspace(points.front().dim(), rows);
}

HPoint line_param(const HPoint& x, const HPoint& y, const Rational& t, const Chart& chart) {
  if (x == y) fail(ErrorKind::DegenerateConfiguration, "line_param: x = y");
  const Vector xs = chart.dehomogenize(x);
  const Vector ys = chart.dehomogenize(y);
  Vector p(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) p[i] = (1 - t) * xs[i] + t * ys[i];
  return HPoint(std::move(p));
}

}  // namespace hilbertlab
