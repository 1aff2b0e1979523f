#pragma once

#include "hilbertlab/domain.hpp"

#include <memory>
#include <vector>

namespace hilbertlab {

/// Float-mode domain {x : x^T Q x < 0} for a symmetric Q of signature (1, d-1).
class QuadricDomain : public MetricDomain {
 public:
  static constexpr double kTolerance = 1e-9;

  explicit QuadricDomain(std::vector<std::vector<double>> form);

  std::size_t ambient_dim() const override { return form_.size(); }
  const std::vector<double>& chart_functional() const override { return chart_; }
  bool is_interior(std::span<const double> x) const override;
  std::pair<double, double> chord_params(std::span<const double> x, std::span<const double> y) const override;

  const std::vector<std::vector<double>>& form() const noexcept { return form_; }
  double quadratic(std::span<const double> x, std::span<const double> y) const;

 private:
  std::vector<std::vector<double>> form_;
  std::vector<double> chart_;
};

/// Klein model of hyperbolic (d-1)-space: -x_0^2 + x_1^2 + ... + x_{d-1}^2 < 0.
std::shared_ptr<const QuadricDomain> klein_ball(std::size_t d);

}  // namespace hilbertlab
