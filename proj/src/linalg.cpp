#include "hilbertlab/error.hpp"
#include "hilbertlab/projective.hpp"

#include <algorithm>

namespace hilbertlab::linalg {

Echelon rref(Matrix rows) {
  Echelon out;
  if (rows.empty()) return out;
  const std::size_t cols = rows.front().size();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows.size(); ++c) {
    std::size_t p = r;
    while (p < rows.size() && rows[p][c] == 0) ++p;
    if (p == rows.size()) continue;
    std::swap(rows[r], rows[p]);
    const Rational inv = 1 / rows[r][c];
    for (std::size_t j = c; j < cols; ++j) rows[r][j] *= inv;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == r || rows[i][c] == 0) continue;
      const Rational f = rows[i][c];
      for (std::size_t j = c; j < cols; ++j) rows[i][j] -= f * rows[r][j];
    }
    out.pivots.push_back(c);
    ++r;
  }
  rows.resize(r);
  out.rows = std::move(rows);
  return out;
}

std::size_t rank(const Matrix& rows) { return rref(rows).rows.size(); }

Matrix nullspace(const Matrix& rows, std::size_t cols) {
  Echelon e = rref(rows);
  std::vector<bool> is_pivot(cols, false);
  for (auto p : e.pivots) is_pivot[p] = true;
  Matrix basis;
  for (std::size_t free = 0; free < cols; ++free) {
    if (is_pivot[free]) continue;
    Vector v(cols, Rational(0));
    v[free] = 1;
    for (std::size_t i = 0; i < e.rows.size(); ++i) v[e.pivots[i]] = -e.rows[i][free];
    basis.push_back(std::move(v));
  }
  return basis;
}

std::optional<Vector> solve(const Matrix& a, const Vector& b) {
  if (a.size() != b.size()) fail(ErrorKind::InvalidInput, "solve: dimension mismatch");
  const std::size_t cols = a.empty() ? 0 : a.front().size();
  Matrix aug = a;
  for (std::size_t i = 0; i < aug.size(); ++i) aug[i].push_back(b[i]);
  Echelon e = rref(std::move(aug));
  Vector z(cols, Rational(0));
  for (std::size_t i = 0; i < e.rows.size(); ++i) {
    if (e.pivots[i] == cols) return std::nullopt;
    z[e.pivots[i]] = e.rows[i][cols];
  }
  return z;
}

Matrix inverse(const Matrix& m) {
  const std::size_t n = m.size();
  Matrix aug = m;
  for (std::size_t i = 0; i < n; ++i) {
    if (aug[i].size() != n) fail(ErrorKind::InvalidInput, "inverse: matrix is not square");
    aug[i].resize(2 * n, Rational(0));
    aug[i][n + i] = 1;
  }
  Echelon e = rref(std::move(aug));
  if (e.rows.size() < n || e.pivots[n - 1] >= n) {
    fail(ErrorKind::DegenerateConfiguration, "matrix is singular");
  }
  Matrix inv(n, Vector(n));
  for (std::size_t i = 0; i < n; ++i) {
    std::copy(e.rows[i].begin() + static_cast<std::ptrdiff_t>(n), e.rows[i].end(), inv[i].begin());
  }
  return inv;
}

Rational determinant(Matrix m) {
  const std::size_t n = m.size();
  Rational det = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && m[p][c] == 0) ++p;
    if (p == n) return 0;
    if (p != c) {
      std::swap(m[p], m[c]);
      det = -det;
    }
    det *= m[c][c];
    for (std::size_t i = c + 1; i < n; ++i) {
      if (m[i][c] == 0) continue;
      const Rational f = m[i][c] / m[c][c];
      for (std::size_t j = c; j < n; ++j) m[i][j] -= f * m[c][j];
    }
  }
  return det;
}

Matrix identity(std::size_t n) {
  Matrix m(n, Vector(n, Rational(0)));
  for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

Matrix transpose(const Matrix& m) {
  if (m.empty()) return {};
  Matrix t(m.front().size(), Vector(m.size()));
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < m[i].size(); ++j) t[j][i] = m[i][j];
  return t;
}

Matrix multiply(const Matrix& a, const Matrix& b) {
  const std::size_t inner = b.size();
  const std::size_t cols = b.empty() ? 0 : b.front().size();
  Matrix out(a.size(), Vector(cols, Rational(0)));
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].size() != inner) fail(ErrorKind::InvalidInput, "multiply: dimension mismatch");
    for (std::size_t k = 0; k < inner; ++k) {
      if (a[i][k] == 0) continue;
      for (std::size_t j = 0; j < cols; ++j) out[i][j] += a[i][k] * b[k][j];
    }
  }
  return out;
}

Vector multiply(const Matrix& a, std::span<const Rational> v) {
  Vector out(a.size(), Rational(0));
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = dot(a[i], v);
  return out;
}

Rational dot(std::span<const Rational> a, std::span<const Rational> b) {
  if (a.size() != b.size()) fail(ErrorKind::InvalidInput, "dot: dimension mismatch");
  Rational s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] != 0 && b[i] != 0) s += a[i] * b[i];
  }
  return s;
}

Vector add_scaled(std::span<const Rational> a, const Rational& s, std::span<const Rational> b) {
  if (a.size() != b.size()) fail(ErrorKind::InvalidInput, "add_scaled: dimension mismatch");
  Vector out(a.begin(), a.end());
  if (s == 0) return out;
  for (std::size_t i = 0; i < a.size(); ++i) out[i] += s * b[i];
  return out;
}

bool is_zero(std::span<const Rational> v) {
  return std::all_of(v.begin(), v.end(), [](const Rational& x) { return x == 0; });
}

bool proportional(std::span<const Rational> a, std::span<const Rational> b) {
  if (a.size() != b.size()) return false;
  std::size_t i = 0;
  while (i < a.size() && a[i] == 0) ++i;
  if (i == a.size()) return is_zero(b);
  if (b[i] == 0) return false;
  for (std::size_t j = 0; j < a.size(); ++j) {
    if (a[j] * b[i] != b[j] * a[i]) return false;
  }
  return true;
}

Vector primitive(std::span<const Rational> v) {
  Integer lcm_den = 1;
  for (const auto& x : v) {
    if (x != 0) lcm_den = boost::multiprecision::lcm(lcm_den, boost::multiprecision::denominator(x));
  }
  std::vector<Integer> ints;
  ints.reserve(v.size());
  Integer g = 0;
  for (const auto& x : v) {
    Integer n = boost::multiprecision::numerator(x) * (lcm_den / boost::multiprecision::denominator(x));
    g = boost::multiprecision::gcd(g, n);
    ints.push_back(std::move(n));
  }
  Vector out(v.size(), Rational(0));
  if (g == 0) return out;
  std::size_t first = 0;
  while (ints[first] == 0) ++first;
  if (ints[first] < 0) g = -g;
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = Rational(ints[i] / g);
  return out;
}

std::vector<double> to_doubles(std::span<const Rational> v) {
  std::vector<double> out;
  out.reserve(v.size());
  for (const auto& x : v) out.push_back(to_double(x));
  return out;
}

}  // namespace hilbertlab::linalg
