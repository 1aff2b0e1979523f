#pragma once

#include "hilbertlab/rational.hpp"

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace hilbertlab {

using Vector = std::vector<Rational>;
/// Row-major dense matrix.
using Matrix = std::vector<Vector>;

namespace linalg {

struct Echelon {
  Matrix rows;                      // nonzero rows of the reduced row echelon form
  std::vector<std::size_t> pivots;  // pivot column of each row
};

Echelon rref(Matrix rows);
std::size_t rank(const Matrix& rows);
/// Basis of { v in Q^cols : rows * v = 0 }.
Matrix nullspace(const Matrix& rows, std::size_t cols);
/// Some solution of a * z = b, or nullopt when inconsistent.
std::optional<Vector> solve(const Matrix& a, const Vector& b);
Matrix inverse(const Matrix& m);
Rational determinant(Matrix m);
Matrix identity(std::size_t n);
Matrix transpose(const Matrix& m);
Matrix multiply(const Matrix& a, const Matrix& b);
Vector multiply(const Matrix& a, std::span<const Rational> v);
Rational dot(std::span<const Rational> a, std::span<const Rational> b);
Vector add_scaled(std::span<const Rational> a, const Rational& s, std::span<const Rational> b);
bool is_zero(std::span<const Rational> v);
/// Equal up to a nonzero scalar, decided by cross-multiplication.
bool proportional(std::span<const Rational> a, std::span<const Rational> b);
/// Coprime integer multiple with first nonzero entry positive.
Vector primitive(std::span<const Rational> v);
std::vector<double> to_doubles(std::span<const Rational> v);

}  // namespace linalg

/// A point of real projective space, stored by one homogeneous lift.
class HPoint {
 public:
  explicit HPoint(Vector coords);
  HPoint(std::initializer_list<long> coords);

  std::size_t dim() const noexcept { return coords_.size(); }
  const Vector& coords() const noexcept { return coords_; }
  const Rational& operator[](std::size_t i) const { return coords_[i]; }

  /// Same point with the first nonzero coordinate made positive.
  HPoint sign_normalized() const;
  /// Coprime integer lift, first nonzero coordinate positive. Equal points have equal keys.
  HPoint canonical() const;
  std::string key() const;
  std::vector<double> to_doubles() const { return linalg::to_doubles(coords_); }

  friend bool operator==(const HPoint& a, const HPoint& b) { return linalg::proportional(a.coords_, b.coords_); }

 private:
  Vector coords_;
};

/// Projective transformation given by an invertible matrix.
class ProjMap {
 public:
  explicit ProjMap(Matrix matrix);

  static ProjMap identity(std::size_t d);
  static ProjMap diagonal(const Vector& entries);
  static ProjMap permutation(std::span<const std::size_t> image);  // e_i -> e_{image[i]}

  std::size_t dim() const noexcept { return matrix_.size(); }
  const Matrix& matrix() const noexcept { return matrix_; }
  ProjMap inverse() const { return ProjMap(inverse_, matrix_); }
  Vector apply(std::span<const Rational> v) const { return linalg::multiply(matrix_, v); }
  HPoint operator()(const HPoint& x) const { return HPoint(apply(x.coords())); }

  friend ProjMap operator*(const ProjMap& a, const ProjMap& b);
  /// Equal as elements of PGL.
  bool equivalent(const ProjMap& other) const;

 private:
  ProjMap(Matrix matrix, Matrix inverse) : matrix_(std::move(matrix)), inverse_(std::move(inverse)) {}

  Matrix matrix_;
  Matrix inverse_;
};

/// Linear subspace held as a reduced row echelon basis, so equal subspaces compare equal.
class LinSubspace {
 public:
  LinSubspace(std::size_t ambient_dim, const Matrix& spanning_vectors);

  std::size_t ambient_dim() const noexcept { return ambient_; }
  std::size_t dim() const noexcept { return basis_.rows.size(); }
  const Matrix& basis() const noexcept { return basis_.rows; }
  const std::vector<std::size_t>& pivots() const noexcept { return basis_.pivots; }

  bool contains(std::span<const Rational> v) const;
  bool contains(const HPoint& x) const { return contains(x.coords()); }
  /// Coefficients of v in the echelon basis; only meaningful when contains(v).
  Vector coordinates(std::span<const Rational> v) const;
  bool contains(const LinSubspace& other) const;

  friend bool operator==(const LinSubspace& a, const LinSubspace& b) {
    return a.ambient_ == b.ambient_ && a.basis_.rows == b.basis_.rows;
  }

 private:
  std::size_t ambient_;
  linalg::Echelon basis_;
};

/// Affine chart given by a linear functional.
class Chart {
 public:
  explicit Chart(Vector functional);

  const Vector& functional() const noexcept { return functional_; }
  Rational value(std::span<const Rational> v) const { return linalg::dot(functional_, v); }
  /// The lift with functional value one; throws NoCommonChart where the functional vanishes.
  Vector dehomogenize(const HPoint& x) const;

 private:
  Vector functional_;
};

/// Cross ratio [a,x,y,b] = |x-b||y-a| / (|x-a||y-b|) of four collinear points.
Rational cross_ratio(const HPoint& a, const HPoint& x, const HPoint& y, const HPoint& b);

LinSubspace span(std::span<const HPoint> points);

inline HPoint apply(const ProjMap& g, const HPoint& x) { return g(x); }

/// Point with affine parameter t on the segment from x (t = 0) to y (t = 1) in the given chart.
HPoint line_param(const HPoint& x, const HPoint& y, const Rational& t, const Chart& chart);

}  // namespace hilbertlab
