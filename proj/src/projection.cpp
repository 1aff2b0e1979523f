#include "hilbertlab/projection.hpp"
#include "hilbertlab/error.hpp"
#include "hilbertlab/lp.hpp"
#include "hilbertlab/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <optional>

namespace hilbertlab {

std::vector<SupportingSet> supporting_sets(const EmbeddedSimplex& s) {
  const auto& dom = s.domain();
  const std::size_t n = s.vertices().size();
  if (n < 2) return {SupportingSet{}};
  std::vector<std::vector<std::size_t>> choices(n);
  for (std::size_t j = 0; j < n; ++j) {
    VertexMask u = 0;
    for (std::size_t i = 0; i < n; ++i)
      if (i != j) u |= s.vertex_faces()[i];
    for (std::size_t f = 0; f < dom.facets().size(); ++f)
      if ((u & ~dom.facet_masks()[f]) == 0) choices[j].push_back(f);
    if (choices[j].empty()) fail(ErrorKind::InteriorLeak, "a boundary face of the simplex lies in no facet");
  }
  std::vector<SupportingSet> out;
  std::vector<std::size_t> idx(n, 0);
  while (true) {
    SupportingSet set;
    for (std::size_t j = 0; j < n; ++j) {
      set.facet_indices.push_back(choices[j][idx[j]]);
      set.functionals.push_back(dom.facets()[choices[j][idx[j]]]);
    }
    out.push_back(std::move(set));
    std::size_t j = n;
    while (j > 0) {
      --j;
      if (++idx[j] < choices[j].size()) break;
      idx[j] = 0;
      if (j == 0) return out;
    }
  }
}

LinearProjection build_projection(const EmbeddedSimplex& s, const SupportingSet& h) {
  const auto& dom = s.domain();
  const std::size_t d = dom.ambient_dim();
  const std::size_t n = s.vertices().size();
  if (n < 2) fail(ErrorKind::InvalidInput, "projection needs a simplex of positive dimension");
  if (h.functionals.size() != n) fail(ErrorKind::InvalidInput, "supporting set size does not match the simplex");
  LinearProjection out;
  out.set_ = h;
  out.image_ = s.span();
  const Matrix kernel_basis = linalg::nullspace(h.functionals, d);
  out.kernel_ = LinSubspace(d, kernel_basis);
  Matrix stacked = s.lifts();
  stacked.insert(stacked.end(), kernel_basis.begin(), kernel_basis.end());
  if (kernel_basis.size() + n != d || linalg::rank(stacked) != d)
    fail(ErrorKind::DirectSumFailure, "span and kernel are not complementary");
  Matrix a(n, Vector(n));
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t l = 0; l < n; ++l) a[j][l] = linalg::dot(h.functionals[j], s.lifts()[l]);
  if (linalg::determinant(a) == 0) fail(ErrorKind::DirectSumFailure, "supporting set is singular on the simplex");
  const Matrix coeff = linalg::multiply(linalg::inverse(a), h.functionals);  // n x d
  out.matrix_.assign(d, Vector(d, Rational(0)));
  for (std::size_t r = 0; r < d; ++r)
    for (std::size_t c = 0; c < d; ++c)
      for (std::size_t l = 0; l < n; ++l) out.matrix_[r][c] += s.lifts()[l][r] * coeff[l][c];
  for (const auto& row : out.matrix_) out.matrix_d_.push_back(linalg::to_doubles(row));
  // The kernel may touch the boundary but never the open domain, so the interior lands in S.
  const HPoint center(dom.barycenter(dom.all_vertices()));
  const Vector image = linalg::multiply(out.matrix_, center.coords());
  if (linalg::is_zero(image) || !s.contains(HPoint(image)))
    fail(ErrorKind::DirectSumFailure, "projection sends the domain's barycenter outside the simplex");
  return out;
}

HPoint LinearProjection::project(const HPoint& x) const {
  Vector y = linalg::multiply(matrix_, x.coords());
  if (linalg::is_zero(y)) fail(ErrorKind::InKernel, "point lies in the projection kernel");
  return HPoint(std::move(y));
}

PointD LinearProjection::project(std::span<const double> x) const {
  PointD y(matrix_d_.size(), 0.0);
  bool zero = true;
  for (std::size_t r = 0; r < y.size(); ++r) {
    for (std::size_t c = 0; c < x.size(); ++c) y[r] += matrix_d_[r][c] * x[c];
    if (y[r] != 0) zero = false;
  }
  if (zero) fail(ErrorKind::InKernel, "point lies in the projection kernel");
  return y;
}

namespace {

double coeff_distance(const std::vector<double>& a, const std::vector<double>& b) {
  double hi = -std::numeric_limits<double>::infinity();
  double lo = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double r = std::log(std::max(a[i], 1e-300)) - std::log(std::max(b[i], 1e-300));
    hi = std::max(hi, r);
    lo = std::min(lo, r);
  }
  return 0.5 * (hi - lo);
}

}  // namespace

namespace {

// Below this optimum the double program loses the ratio to rounding and the exact one takes over.
constexpr double kExactBelow = 1e-6;
// Largest accepted gap between the attained distance and the one implied by the double optimum.
constexpr double kAgreement = 1e-7;

template <class T>
struct ClosestProgram {
  lp::BasicProblem<T> problem;
  T value = T(0);
  std::vector<std::vector<T>> extremes;  // first entry is the optimum
};

// g[i][l] = f_i(v_l) / f_i(x). Variables: coefficients, then t; maximize t with t <= g_i.coeffs <= 1.
template <class T>
std::optional<ClosestProgram<T>> solve_closest(const std::vector<std::vector<T>>& g, std::size_t n, bool with_extremes,
                                               const T& keep) {
  // Columns are scaled to unit maximum; near the boundary the raw entries span many orders of magnitude.
  std::vector<T> scale(n, T(0));
  for (const auto& row : g)
    for (std::size_t l = 0; l < n; ++l) scale[l] = std::max(scale[l], row[l]);
  for (const auto& c : scale)
    if (!(c > 0)) return std::nullopt;
  ClosestProgram<T> out;
  auto& p = out.problem;
  p.num_vars = n + 1;
  p.objective.assign(n + 1, T(0));
  p.objective[n] = 1;
  for (const auto& row : g) {
    lp::BasicConstraint<T> upper{std::vector<T>(n + 1, T(0)), lp::Relation::LessEq, T(1)};
    lp::BasicConstraint<T> lower{std::vector<T>(n + 1, T(0)), lp::Relation::LessEq, T(0)};
    for (std::size_t l = 0; l < n; ++l) {
      upper.coeffs[l] = row[l] / scale[l];
      lower.coeffs[l] = -upper.coeffs[l];
    }
    lower.coeffs[n] = 1;
    p.constraints.push_back(std::move(upper));
    p.constraints.push_back(std::move(lower));
  }
  auto unscaled = [&](const std::vector<T>& x) {
    std::vector<T> c(x.begin(), x.begin() + static_cast<long>(n));
    for (std::size_t l = 0; l < n; ++l) c[l] /= scale[l];
    return c;
  };
  const auto sol = lp::maximize(p);
  if (sol.status != lp::Status::Optimal || !(sol.value > 0)) return std::nullopt;
  out.value = sol.value;
  out.extremes.push_back(unscaled(sol.x));
  if (!with_extremes) return out;
  lp::BasicProblem<T> q = p;
  lp::BasicConstraint<T> near{std::vector<T>(n + 1, T(0)), lp::Relation::GreaterEq, sol.value * keep};
  near.coeffs[n] = 1;
  q.constraints.push_back(std::move(near));
  for (std::size_t l = 0; l < n; ++l) {
    for (int sg : {1, -1}) {
      q.objective.assign(n + 1, T(0));
      q.objective[l] = sg;
      const auto e = lp::maximize(q);
      if (e.status == lp::Status::Optimal) out.extremes.push_back(unscaled(e.x));
    }
  }
  return out;
}

}  // namespace

ClosestPoint closest_point(const EmbeddedSimplex& s, std::span<const double> x, bool with_extremes) {
  const auto& dom = s.domain();
  const PointD xn = dom.normalize(x);
  const auto fx = dom.facet_values(xn);
  for (double v : fx)
    if (!(v > 0)) fail(ErrorKind::NotInterior, "closest point needs an interior point");
  const std::size_t n = s.vertices().size();

  ClosestPoint out;
  std::vector<std::vector<double>> g(fx.size(), std::vector<double>(n));
  for (std::size_t l = 0; l < n; ++l) {
    const auto fv = dom.facet_values(linalg::to_doubles(s.lifts()[l]));
    for (std::size_t i = 0; i < fx.size(); ++i) g[i][l] = fv[i] / fx[i];
  }
  const auto approx = solve_closest<double>(g, n, with_extremes, 1 - 1e-9);
  bool trusted = approx && approx->value >= kExactBelow;
  if (trusted) {
    // A badly scaled program can report an optimum its own coefficients do not attain.
    out.radius = dom.distance(xn, dom.normalize(s.point_d(approx->extremes.front())));
    trusted = std::abs(out.radius - 0.5 * std::log(1 / approx->value)) <= kAgreement;
  }
  if (trusted) {
    out.extremes = approx->extremes;
  } else {
    // Far from S the optimum t = e^{-2H} underflows the double tolerances; redo it exactly at the given x.
    Vector xr;
    for (double v : xn) xr.push_back(from_double(v));
    const Vector fxr = dom.facet_values(xr);
    std::vector<std::vector<Rational>> gr(fxr.size(), std::vector<Rational>(n));
    for (std::size_t l = 0; l < n; ++l) {
      const Vector fv = dom.facet_values(s.lifts()[l]);
      for (std::size_t i = 0; i < fxr.size(); ++i) gr[i][l] = fv[i] / fxr[i];
    }
    const auto exact = solve_closest<Rational>(gr, n, with_extremes, Rational(1));
    if (!exact) fail(ErrorKind::ToleranceNotReached, "closest-point program did not converge");
    for (const auto& e : exact->extremes) {
      std::vector<double> d;
      for (const auto& c : e) d.push_back(to_double(c));
      out.extremes.push_back(std::move(d));
    }
    out.radius = 0.5 * log_rational(1 / exact->value);
  }
  out.coeffs = out.extremes.front();
  out.point = dom.normalize(s.point_d(out.coeffs));
  if (!with_extremes) out.extremes.clear();
  for (std::size_t a = 0; a < out.extremes.size(); ++a)
    for (std::size_t b = a + 1; b < out.extremes.size(); ++b)
      out.flat_diameter = std::max(out.flat_diameter, coeff_distance(out.extremes[a], out.extremes[b]));
  return out;
}

ClosestPoint closest_point(const EmbeddedSimplex& s, const HPoint& x) {
  if (s.domain().locate(x).kind != Location::Interior) fail(ErrorKind::NotInterior, "closest point needs an interior point");
  return closest_point(s, x.to_doubles());
}

double distance_to_simplex(const EmbeddedSimplex& s, std::span<const double> x) { return closest_point(s, x, false).radius; }

ProjectionReport coarse_gap(const EmbeddedSimplex& s, std::span<const PointD> samples) {
  const auto sets = supporting_sets(s);
  std::vector<LinearProjection> projections;
  for (const auto& h : sets) projections.push_back(build_projection(s, h));
  struct Row {
    std::vector<double> per_set;
    std::vector<PointD> lx;
    std::vector<PointD> p;
  };
  std::vector<Row> rows(samples.size());
  parallel_for(samples.size(), [&](std::size_t k) {
    const auto cp = closest_point(s, samples[k]);
    Row& row = rows[k];
    for (const auto& l : projections) {
      const PointD lx = l.project(samples[k]);
      double worst = -1;
      PointD arg;
      for (const auto& e : cp.extremes) {
        PointD pe = s.point_d(e);
        const double g = s.domain().distance(lx, pe);
        if (g > worst) {
          worst = g;
          arg = std::move(pe);
        }
      }
      row.per_set.push_back(worst);
      row.lx.push_back(s.domain().normalize(lx));
      row.p.push_back(s.domain().normalize(arg));
    }
  });
  ProjectionReport rep;
  rep.samples = samples.size();
  rep.supporting_sets = sets.size();
  for (std::size_t k = 0; k < rows.size(); ++k) {
    rep.delta1_first_set = std::max(rep.delta1_first_set, rows[k].per_set.front());
    for (std::size_t j = 0; j < sets.size(); ++j) {
      if (rows[k].per_set[j] > rep.delta1 || (k == 0 && j == 0)) {
        rep.delta1 = rows[k].per_set[j];
        rep.witness_x = s.domain().normalize(samples[k]);
        rep.witness_lx = rows[k].lx[j];
        rep.witness_p = rows[k].p[j];
        rep.witness_set = j;
      }
    }
  }
  return rep;
}

ProjectionReport coarse_gap(const EmbeddedSimplex& s, std::size_t count, std::uint64_t seed, unsigned max_weight) {
  std::mt19937_64 rng(seed);
  std::vector<PointD> samples;
  for (std::size_t k = 0; k < count; ++k) samples.push_back(sample_interior(s.domain(), rng, max_weight).to_doubles());
  return coarse_gap(s, samples);
}

}  // namespace hilbertlab
