#pragma once

#include "hilbertlab/rational.hpp"

#include <compare>
#include <optional>

namespace hilbertlab {

/// A Hilbert length H = log(q) / 2. Exact lengths keep q as a rational and are
/// compared and added in q-space; approximate lengths keep H as a double.
class HilbertLength {
 public:
  HilbertLength() : q_(Rational(1)), value_(0.0) {}

  static HilbertLength from_q(Rational q);
  static HilbertLength approx(double value);

  bool is_exact() const noexcept { return q_.has_value(); }
  /// Requires is_exact().
  const Rational& q() const;
  double value() const noexcept { return value_; }

  friend HilbertLength operator+(const HilbertLength& a, const HilbertLength& b);
  friend std::partial_ordering operator<=>(const HilbertLength& a, const HilbertLength& b);
  friend bool operator==(const HilbertLength& a, const HilbertLength& b);

 private:
  std::optional<Rational> q_;
  double value_;
};

}  // namespace hilbertlab
