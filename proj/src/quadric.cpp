#include "hilbertlab/quadric.hpp"
#include "hilbertlab/error.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <limits>

namespace hilbertlab {

QuadricDomain::QuadricDomain(std::vector<std::vector<double>> form) : form_(std::move(form)) {
  const std::size_t d = form_.size();
  if (d < 2) fail(ErrorKind::InvalidInput, "quadric needs dimension at least 2");
  Eigen::MatrixXd m(d, d);
  for (std::size_t i = 0; i < d; ++i) {
    if (form_[i].size() != d) fail(ErrorKind::InvalidInput, "quadric form must be square");
    for (std::size_t j = 0; j < d; ++j) m(i, j) = form_[i][j];
  }
  if (!m.isApprox(m.transpose(), kTolerance)) fail(ErrorKind::InvalidInput, "quadric form must be symmetric");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(m);
  const auto& vals = eig.eigenvalues();
  const double scale = vals.cwiseAbs().maxCoeff();
  std::size_t negative = 0;
  for (Eigen::Index i = 0; i < vals.size(); ++i) {
    if (std::abs(vals[i]) <= kTolerance * scale) fail(ErrorKind::DegenerateDomain, "quadric form is singular");
    if (vals[i] < 0) ++negative;
  }
  if (negative != 1) fail(ErrorKind::DegenerateDomain, "quadric form must have signature (1, d-1)");
  // Eigenvalues are sorted ascending, so column 0 spans the timelike axis.
  const Eigen::VectorXd axis = eig.eigenvectors().col(0);
  chart_.assign(axis.data(), axis.data() + d);
}

double QuadricDomain::quadratic(std::span<const double> x, std::span<const double> y) const {
  double s = 0;
  for (std::size_t i = 0; i < form_.size(); ++i)
    for (std::size_t j = 0; j < form_.size(); ++j) s += x[i] * form_[i][j] * y[j];
  return s;
}

bool QuadricDomain::is_interior(std::span<const double> x) const { return quadratic(x, x) < 0; }

std::pair<double, double> QuadricDomain::chord_params(std::span<const double> x, std::span<const double> y) const {
  std::vector<double> u(x.size());
  for (std::size_t i = 0; i < u.size(); ++i) u[i] = y[i] - x[i];
  const double a = quadratic(u, u);
  const double b = 2 * quadratic(x, u);
  const double c = quadratic(x, x);
  if (!(a > 0)) return {-std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity()};
  const double disc = std::sqrt(std::max(0.0, b * b - 4 * a * c));
  // Stable roots: the product of the roots is c / a < 0.
  const double qv = -0.5 * (b + (b >= 0 ? disc : -disc));
  double r1 = qv / a;
  double r2 = c / qv;
  if (r1 > r2) std::swap(r1, r2);
  return {r1, r2};
}

std::shared_ptr<const QuadricDomain> klein_ball(std::size_t d) {
  if (d < 2) fail(ErrorKind::InvalidInput, "klein_ball needs d >= 2");
  std::vector<std::vector<double>> q(d, std::vector<double>(d, 0.0));
  q[0][0] = -1;
  for (std::size_t i = 1; i < d; ++i) q[i][i] = 1;
  return std::make_shared<QuadricDomain>(std::move(q));
}

}  // namespace hilbertlab
