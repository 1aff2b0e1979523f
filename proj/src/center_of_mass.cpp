#include "hilbertlab/error.hpp"
#include "hilbertlab/lp.hpp"
#include "hilbertlab/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <utility>

namespace hilbertlab {
namespace {

constexpr std::size_t kMaxDepth = 12;
constexpr double kUniqueDiameter = 1e-7;

struct Evaluated {
  std::vector<PointD> points;              // chart-normalized
  std::vector<std::vector<double>> values;  // facet values per point
};

// Variables: hull weights mu (m), then beta (m). Feasible iff some hull point x has
// max_i f_i(x)/f_i(k) * max_j f_j(k)/f_j(x) <= rho for every k.
lp::Problem chebyshev_lp(const Evaluated& e, double rho) {
  const std::size_t m = e.points.size();
  const std::size_t nf = e.values.front().size();
  lp::Problem p;
  p.num_vars = 2 * m;
  p.objective.assign(2 * m, 0.0);
  lp::Constraint norm{std::vector<double>(2 * m, 0.0), lp::Relation::Equal, 1.0};
  for (std::size_t l = 0; l < m; ++l) norm.coeffs[l] = 1.0;
  p.constraints.push_back(std::move(norm));
  for (std::size_t k = 0; k < m; ++k) {
    for (std::size_t i = 0; i < nf; ++i) {
      lp::Constraint upper{std::vector<double>(2 * m, 0.0), lp::Relation::LessEq, 0.0};
      lp::Constraint lower{std::vector<double>(2 * m, 0.0), lp::Relation::LessEq, 0.0};
      for (std::size_t l = 0; l < m; ++l) {
        upper.coeffs[l] = e.values[l][i];
        lower.coeffs[l] = -rho * e.values[l][i];
      }
      upper.coeffs[m + k] = -e.values[k][i];
      lower.coeffs[m + k] = e.values[k][i];
      p.constraints.push_back(std::move(upper));
      p.constraints.push_back(std::move(lower));
    }
  }
  return p;
}

double q_between(const std::vector<double>& fx, const std::vector<double>& fy) {
  double hi = 0;
  double lo = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < fx.size(); ++i) {
    hi = std::max(hi, fx[i] / fy[i]);
    lo = std::min(lo, fx[i] / fy[i]);
  }
  return hi / lo;
}

std::vector<double> combine(const std::vector<std::vector<double>>& rows, const std::vector<double>& w) {
  std::vector<double> out(rows.front().size(), 0.0);
  for (std::size_t l = 0; l < rows.size(); ++l)
    for (std::size_t c = 0; c < out.size(); ++c) out[c] += w[l] * rows[l][c];
  return out;
}

struct RatioMax {
  std::vector<double> weights;  // hull weights, summing to one
  double ratio = 0;
};

// Dinkelbach iteration for max f_i(x) / f_j(x) over the program's feasible hull points.
std::optional<RatioMax> maximize_ratio(const lp::Problem& program, const Evaluated& e, std::size_t i, std::size_t j) {
  const std::size_t m = e.points.size();
  std::optional<RatioMax> best;
  double ratio = 0;
  for (int iter = 0; iter < 16; ++iter) {
    lp::Problem p = program;
    for (std::size_t l = 0; l < m; ++l) p.objective[l] = e.values[l][i] - ratio * e.values[l][j];
    const auto sol = lp::maximize(p);
    if (sol.status != lp::Status::Optimal) break;
    std::vector<double> w(sol.x.begin(), sol.x.begin() + static_cast<long>(m));
    double total = 0, fi = 0, fj = 0;
    for (auto& x : w) total += (x = std::max(0.0, x));
    if (!(total > 0)) break;
    for (std::size_t l = 0; l < m; ++l) {
      w[l] /= total;
      fi += w[l] * e.values[l][i];
      fj += w[l] * e.values[l][j];
    }
    const bool done = sol.value <= 1e-13 * fj * std::max(1.0, ratio);
    ratio = fi / fj;
    best = RatioMax{std::move(w), ratio};
    if (done) break;
  }
  return best;
}

/// Returns hull weights of the center over the given points.
std::vector<double> center_weights(const PolytopeDomain& domain, const std::vector<PointD>& pts, std::size_t depth,
                                   CenterOfMassInfo& info) {
  const std::size_t m = pts.size();
  Evaluated e;
  for (const auto& p : pts) {
    e.points.push_back(domain.normalize(p));
    e.values.push_back(domain.facet_values(e.points.back()));
    for (double v : e.values.back())
      if (!(v > 0)) fail(ErrorKind::DegenerateHull, "center of mass needs interior points");
  }
  std::vector<double> uniform(m, 1.0 / static_cast<double>(m));
  if (m == 1 || e.values.front().empty()) return uniform;

  const auto centroid = combine(e.values, uniform);
  double hi = 1.0;
  for (const auto& v : e.values) hi = std::max(hi, q_between(centroid, v));
  double lo = 1.0;
  for (int iter = 0; iter < 200 && std::log(hi) - std::log(lo) > 1e-13 * std::max(1.0, std::log(hi)); ++iter) {
    const double mid = std::sqrt(hi * lo);
    if (lp::maximize(chebyshev_lp(e, mid)).status == lp::Status::Optimal) hi = mid;
    else lo = mid;
  }
  if (depth == 0) info.radius = 0.5 * std::log(hi);

  // Extreme points of the minimizer set: maximize a facet ratio f_i / f_j, then break ties on
  // that optimal face with f_i / f_k and f_k / f_i. Automorphisms permute this family of
  // objectives up to constants, so the probed points move equivariantly.
  const auto base = chebyshev_lp(e, hi);
  const std::size_t nf = e.values.front().size();
  std::vector<std::vector<double>> extremes;
  for (std::size_t i = 0; i < nf; ++i) {
    for (std::size_t j = 0; j < nf; ++j) {
      if (i == j) continue;
      const auto primary = maximize_ratio(base, e, i, j);
      if (!primary) continue;
      lp::Problem face = base;
      // Relative slack keeps the optimal face feasible under the solver tolerance.
      lp::Constraint keep{std::vector<double>(2 * m, 0.0), lp::Relation::LessEq, 0.0};
      for (std::size_t l = 0; l < m; ++l) keep.coeffs[l] = primary->ratio * (1 - 1e-10) * e.values[l][j] - e.values[l][i];
      face.constraints.push_back(std::move(keep));
      bool any = false;
      for (std::size_t k = 0; k < nf; ++k) {
        if (k == i || k == j) continue;
        for (const auto& [num, den] : {std::pair{i, k}, std::pair{k, i}}) {
          if (auto r = maximize_ratio(face, e, num, den)) {
            extremes.push_back(std::move(r->weights));
            any = true;
          }
        }
      }
      if (!any) extremes.push_back(primary->weights);
    }
  }
  if (extremes.empty()) fail(ErrorKind::DegenerateHull, "minimizer set could not be resolved");

  std::vector<PointD> xs;
  for (const auto& w : extremes) xs.push_back(combine(e.points, w));
  double diam = 0;
  for (std::size_t a = 0; a < xs.size(); ++a)
    for (std::size_t b = a + 1; b < xs.size(); ++b) diam = std::max(diam, domain.distance(xs[a], xs[b]));

  std::vector<double> avg(m, 0.0);
  for (const auto& w : extremes)
    for (std::size_t l = 0; l < m; ++l) avg[l] += w[l] / static_cast<double>(extremes.size());
  if (diam <= kUniqueDiameter) return avg;
  if (depth >= kMaxDepth) {
    info.depth_capped = true;
    return avg;
  }
  // Deduplicate extremes, then recurse on them.
  std::vector<PointD> distinct;
  std::vector<std::vector<double>> distinct_w;
  for (std::size_t a = 0; a < xs.size(); ++a) {
    bool dup = false;
    for (const auto& y : distinct)
      if (domain.distance(xs[a], y) <= kUniqueDiameter) dup = true;
    if (!dup) {
      distinct.push_back(xs[a]);
      distinct_w.push_back(extremes[a]);
    }
  }
  info.depth = std::max(info.depth, depth + 1);
  const auto inner = center_weights(domain, distinct, depth + 1, info);
  std::vector<double> out(m, 0.0);
  for (std::size_t a = 0; a < distinct_w.size(); ++a)
    for (std::size_t l = 0; l < m; ++l) out[l] += inner[a] * distinct_w[a][l];
  return out;
}

}  // namespace

PointD center_of_mass(const PolytopeDomain& domain, const std::vector<PointD>& points, CenterOfMassInfo* info) {
  if (points.empty()) fail(ErrorKind::DegenerateHull, "empty point set");
  CenterOfMassInfo local;
  std::vector<PointD> normalized;
  for (const auto& p : points) normalized.push_back(domain.normalize(p));
  const auto w = center_weights(domain, normalized, 0, local);
  if (info) *info = local;
  return combine(normalized, w);
}

HPoint center_of_mass(const PolytopeDomain& domain, std::span<const HPoint> points, CenterOfMassInfo* info) {
  if (points.empty()) fail(ErrorKind::DegenerateHull, "empty point set");
  for (const auto& p : points)
    if (domain.locate(p).kind != Location::Interior) fail(ErrorKind::DegenerateHull, "center of mass needs interior points");
  Matrix lifts;
  std::vector<PointD> pts;
  for (const auto& p : points) {
    lifts.push_back(domain.normalized_lift(p));
    pts.push_back(linalg::to_doubles(lifts.back()));
  }
  CenterOfMassInfo local;
  const auto w = center_weights(domain, pts, 0, local);
  if (info) *info = local;
  // Rational weights keep the result exactly inside the hull's span.
  Vector out(domain.ambient_dim(), Rational(0));
  for (std::size_t l = 0; l < lifts.size(); ++l) {
    const Rational wl = from_double(w[l]);
    for (std::size_t c = 0; c < out.size(); ++c) out[c] += wl * lifts[l][c];
  }
  return HPoint(std::move(out));
}

}  // namespace hilbertlab
