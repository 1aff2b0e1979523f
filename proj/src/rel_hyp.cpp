#include "hilbertlab/rel_hyp.hpp"
#include "hilbertlab/error.hpp"
#include "hilbertlab/parallel.hpp"

#include <algorithm>
#include <cmath>

namespace hilbertlab {
namespace {

double norm(std::span<const double> x) {
  double s = 0;
  for (double v : x) s += v * v;
  return std::sqrt(s);
}

std::vector<PointD> sample_segment(const MetricDomain& dom, std::span<const double> a, std::span<const double> b,
                                   double resolution) {
  const double len = dom.distance(a, b);
  const std::size_t n = std::max<std::size_t>(2, static_cast<std::size_t>(std::ceil(len / resolution)) + 1);
  std::vector<PointD> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = dom.geodesic(a, b, len * static_cast<double>(i) / static_cast<double>(n - 1));
  return out;
}

double one_side(const MetricDomain& dom, std::span<const double> x, std::span<const double> y, std::span<const double> z,
                double resolution, std::size_t& samples) {
  const auto pts = sample_segment(dom, x, y, resolution);
  std::vector<double> r(pts.size());
  parallel_for(pts.size(), [&](std::size_t i) {
    r[i] = std::min(point_to_segment(dom, pts[i], x, z), point_to_segment(dom, pts[i], z, y));
  });
  samples += pts.size();
  return *std::max_element(r.begin(), r.end());
}

double diameter(const PolytopeDomain& dom, const std::vector<PointD>& pts) {
  double d = 0;
  for (std::size_t a = 0; a < pts.size(); ++a)
    for (std::size_t b = a + 1; b < pts.size(); ++b) d = std::max(d, dom.distance(pts[a], pts[b]));
  return d;
}

std::vector<PointD> interior_samples(const PolytopeDomain& dom, std::mt19937_64& rng, std::size_t count, unsigned w) {
  std::vector<PointD> out;
  for (std::size_t i = 0; i < count; ++i) out.push_back(dom.normalize(sample_interior(dom, rng, w).to_doubles()));
  return out;
}

}  // namespace

double fubini_study(std::span<const double> x, std::span<const double> y) {
  const double nx = norm(x);
  const double ny = norm(y);
  double dot = 0;
  for (std::size_t i = 0; i < x.size(); ++i) dot += x[i] * y[i];
  const double sg = dot < 0 ? -1.0 : 1.0;
  double chord = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double d = x[i] / nx - sg * y[i] / ny;
    chord += d * d;
  }
  return 2 * std::asin(std::min(1.0, std::sqrt(chord) / 2));
}

double fubini_study_to_hyperplane(std::span<const double> f, std::span<const double> x) {
  double dot = 0;
  for (std::size_t i = 0; i < x.size(); ++i) dot += f[i] * x[i];
  return std::asin(std::min(1.0, std::abs(dot) / (norm(f) * norm(x))));
}

double point_to_segment(const MetricDomain& dom, std::span<const double> p, std::span<const double> a,
                        std::span<const double> b) {
  const double len = dom.distance(a, b);
  if (len == 0) return dom.distance(p, a);
  constexpr std::size_t kCoarse = 64;
  auto at = [&](double s) { return dom.distance(p, dom.geodesic(a, b, s)); };
  std::size_t best = 0;
  double best_v = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < kCoarse; ++i) {
    const double v = at(len * static_cast<double>(i) / (kCoarse - 1));
    if (v < best_v) {
      best_v = v;
      best = i;
    }
  }
  const double step = len / (kCoarse - 1);
  double lo = std::max(0.0, step * (static_cast<double>(best) - 1));
  double hi = std::min(len, step * (static_cast<double>(best) + 1));
  const double phi = (std::sqrt(5.0) - 1) / 2;
  double m1 = hi - phi * (hi - lo);
  double m2 = lo + phi * (hi - lo);
  double v1 = at(m1);
  double v2 = at(m2);
  while (hi - lo > 1e-10 * std::max(1.0, len)) {
    if (v1 <= v2) {
      hi = m2;
      m2 = m1;
      v2 = v1;
      m1 = hi - phi * (hi - lo);
      v1 = at(m1);
    } else {
      lo = m1;
      m1 = m2;
      v1 = v2;
      m2 = lo + phi * (hi - lo);
      v2 = at(m2);
    }
  }
  return std::min({best_v, v1, v2});
}

std::string to_string(ThinMethod m) {
  return m == ThinMethod::OneSideCriterion ? "OneSideCriterion" : "ExhaustiveSample";
}

ThinCert thin_certify(const MetricDomain& dom, std::span<const double> x, std::span<const double> y,
                      std::span<const double> z, double resolution) {
  if (!(resolution > 0)) fail(ErrorKind::InvalidInput, "resolution must be positive");
  for (auto p : {x, y, z})
    if (!dom.is_interior(p)) fail(ErrorKind::NotInterior, "triangle vertex is not interior");
  ThinCert cert;
  cert.triangle = {PointD(x.begin(), x.end()), PointD(y.begin(), y.end()), PointD(z.begin(), z.end())};
  cert.resolution = resolution;
  cert.R = one_side(dom, x, y, z, resolution, cert.samples);
  cert.delta = 2 * cert.R;
  return cert;
}

ThinCert thin_certify_exhaustive(const MetricDomain& dom, std::span<const double> x, std::span<const double> y,
                                 std::span<const double> z, double resolution) {
  if (!(resolution > 0)) fail(ErrorKind::InvalidInput, "resolution must be positive");
  for (auto p : {x, y, z})
    if (!dom.is_interior(p)) fail(ErrorKind::NotInterior, "triangle vertex is not interior");
  ThinCert cert;
  cert.method = ThinMethod::ExhaustiveSample;
  cert.triangle = {PointD(x.begin(), x.end()), PointD(y.begin(), y.end()), PointD(z.begin(), z.end())};
  cert.resolution = resolution;
  cert.R = std::max({one_side(dom, x, y, z, resolution, cert.samples), one_side(dom, y, z, x, resolution, cert.samples),
                     one_side(dom, z, x, y, resolution, cert.samples)});
  cert.delta = cert.R;
  return cert;
}

APSReport aps_check(const std::vector<EmbeddedSimplex>& family, ProjectionKind kind, const SampleSpec& spec) {
  if (family.empty()) fail(ErrorKind::EmptyFamily, "family is empty");
  const auto& dom = family.front().domain();
  std::vector<std::optional<LinearProjection>> lin(family.size());
  if (kind == ProjectionKind::Linear)
    for (std::size_t i = 0; i < family.size(); ++i) lin[i] = build_projection(family[i], supporting_sets(family[i]).front());
  auto proj = [&](std::size_t i, const PointD& x) {
    return kind == ProjectionKind::Linear ? dom.normalize(lin[i]->project(x)) : closest_point(family[i], x, false).point;
  };

  std::mt19937_64 rng(spec.seed);
  const auto xs = interior_samples(dom, rng, spec.count, spec.max_weight);
  std::vector<std::vector<PointD>> on_s(family.size());
  for (std::size_t i = 0; i < family.size(); ++i)
    for (std::size_t k = 0; k < spec.count; ++k) on_s[i].push_back(dom.normalize(sample_simplex(family[i], rng, spec.radius)));
  // Ball samples: directions and fractions, drawn once.
  const auto dirs = interior_samples(dom, rng, spec.count, spec.max_weight);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<double> fracs(spec.count);
  for (auto& f : fracs) f = unit(rng);

  APSReport rep;
  rep.members = family.size();
  rep.samples = spec.count;
  std::vector<std::array<double, 3>> per(family.size(), {0, 0, 0});
  parallel_for(family.size(), [&](std::size_t i) {
    auto& c = per[i];
    for (std::size_t k = 0; k < xs.size(); ++k) {
      const PointD px = proj(i, xs[k]);
      const PointD& p = on_s[i][k];
      c[0] = std::max(c[0], dom.distance(xs[k], px) + dom.distance(px, p) - dom.distance(xs[k], p));
    }
    for (std::size_t j = 0; j < family.size(); ++j) {
      if (j == i) continue;
      std::vector<PointD> img;
      for (const auto& q : on_s[j]) img.push_back(proj(i, q));
      c[1] = std::max(c[1], diameter(dom, img));
    }
    const std::size_t balls = std::min<std::size_t>(xs.size(), 8);
    for (std::size_t k = 0; k < balls; ++k) {
      const double r = distance_to_simplex(family[i], xs[k]);
      std::vector<PointD> img;
      for (std::size_t m = 0; m < dirs.size(); ++m) img.push_back(proj(i, dom.geodesic(xs[k], dirs[m], fracs[m] * r)));
      c[2] = std::max(c[2], diameter(dom, img));
    }
  });
  for (const auto& c : per)
    for (std::size_t a = 0; a < 3; ++a) rep.C[a] = std::max(rep.C[a], c[a]);
  return rep;
}

IsolationReport isolation_diameter(const EmbeddedSimplex& s1, const EmbeddedSimplex& s2, const std::vector<double>& r_list,
                                   const std::vector<double>& budgets, const SampleSpec& spec) {
  if (s1 == s2) fail(ErrorKind::InvalidInput, "isolation needs two distinct simplices");
  if (budgets.empty() || r_list.empty()) fail(ErrorKind::InvalidInput, "empty radius or budget list");
  const auto& dom = s1.domain();
  IsolationReport rep;
  rep.samples_per_budget = spec.count;
  std::mt19937_64 rng(spec.seed);
  for (double budget : budgets) {
    std::vector<PointD> a;
    std::vector<PointD> b;
    for (std::size_t k = 0; k < spec.count; ++k) a.push_back(dom.normalize(sample_simplex(s1, rng, budget)));
    for (std::size_t k = 0; k < spec.count; ++k) b.push_back(dom.normalize(sample_simplex(s2, rng, budget)));
    std::vector<double> da(a.size());
    std::vector<double> db(b.size());
    parallel_for(a.size(), [&](std::size_t k) { da[k] = distance_to_simplex(s2, a[k]); });
    parallel_for(b.size(), [&](std::size_t k) { db[k] = distance_to_simplex(s1, b[k]); });
    for (double r : r_list) {
      std::vector<PointD> kept;
      for (std::size_t k = 0; k < a.size(); ++k)
        if (da[k] <= 2 * r) kept.push_back(a[k]);
      for (std::size_t k = 0; k < b.size(); ++k)
        if (db[k] <= 2 * r) kept.push_back(b[k]);
      rep.rows.push_back({r, budget, diameter(dom, kept), kept.size()});
    }
  }
  const double b0 = *std::min_element(budgets.begin(), budgets.end());
  const double b1 = *std::max_element(budgets.begin(), budgets.end());
  if (b1 > b0) {
    for (double r : r_list) {
      double d0 = 0;
      double d1 = 0;
      for (const auto& row : rep.rows) {
        if (row.r != r) continue;
        if (row.budget == b0) d0 = row.d_hat;
        if (row.budget == b1) d1 = row.d_hat;
      }
      rep.slope = std::max(rep.slope, (d1 - d0) / (b1 - b0));
    }
  }
  rep.growth = rep.slope >= 0.5;
  return rep;
}

TransverseCheck transverse_measure(const std::vector<EmbeddedSimplex>& family, const std::array<PointD, 3>& triangle,
                                   double kappa, double resolution) {
  if (!(kappa > 0)) fail(ErrorKind::InvalidInput, "kappa must be positive");
  if (family.empty()) fail(ErrorKind::EmptyFamily, "family is empty");
  const auto& dom = family.front().domain();
  TransverseCheck out;
  out.kappa = kappa;
  out.resolution = resolution;
  for (std::size_t e = 0; e < 3; ++e) {
    const auto pts = sample_segment(dom, triangle[e], triangle[(e + 1) % 3], resolution);
    for (const auto& s : family) {
      std::vector<double> d(pts.size());
      parallel_for(pts.size(), [&](std::size_t k) { d[k] = distance_to_simplex(s, pts[k]); });
      std::size_t first = pts.size();
      std::size_t last = 0;
      for (std::size_t k = 0; k < pts.size(); ++k) {
        if (d[k] <= kappa) {
          first = std::min(first, k);
          last = k;
        }
      }
      if (first < pts.size()) out.per_edge[e] = std::max(out.per_edge[e], dom.distance(pts[first], pts[last]));
    }
    out.Delta = std::max(out.Delta, out.per_edge[e]);
  }
  return out;
}

MorseReport morse_check(const MetricDomain& dom, const std::vector<PointD>& path, const std::vector<double>& params,
                        double c, double delta, double resolution) {
  if (path.size() < 2 || path.size() != params.size()) fail(ErrorKind::InvalidInput, "path needs matching samples and parameters");
  constexpr double kSlack = 1e-9;
  for (std::size_t i = 0; i < path.size(); ++i) {
    for (std::size_t j = i + 1; j < path.size(); ++j) {
      const double d = dom.distance(path[i], path[j]);
      const double t = std::abs(params[i] - params[j]);
      if (d < t - c - kSlack || d > t + c + kSlack)
        fail(ErrorKind::NotQuasiGeodesic, "samples " + std::to_string(i) + " and " + std::to_string(j) + " violate the bounds");
    }
  }
  MorseReport rep;
  rep.c = c;
  rep.delta = delta;
  rep.samples = path.size();
  const auto& a = path.front();
  const auto& b = path.back();
  for (const auto& p : path) rep.gap = std::max(rep.gap, point_to_segment(dom, p, a, b));
  for (const auto& g : sample_segment(dom, a, b, resolution)) {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& p : path) best = std::min(best, dom.distance(g, p));
    rep.gap = std::max(rep.gap, best);
  }
  rep.bound = 4 * delta + 10 * c;
  rep.passes = rep.gap <= rep.bound;
  return rep;
}

QuasiGeodesic perturbed_geodesic(const MetricDomain& domain, std::span<const double> x, std::span<const double> y,
                                 std::size_t n, double c, std::mt19937_64& rng) {
  if (n == 0 || !(c >= 0)) fail(ErrorKind::InvalidInput, "need n >= 1 and c >= 0");
  if (!domain.is_interior(x) || !domain.is_interior(y)) fail(ErrorKind::NotInterior, "endpoints must be interior");
  const double len = domain.distance(x, y);
  const auto& chart = domain.chart_functional();
  double cc = 0;
  for (double v : chart) cc += v * v;
  std::normal_distribution<double> gauss;
  std::uniform_real_distribution<double> unit(0.0, 0.999);
  QuasiGeodesic out;
  for (std::size_t i = 0; i <= n; ++i) {
    const double s = len * static_cast<double>(i) / static_cast<double>(n);
    const PointD p = domain.geodesic(x, y, s);
    PointD u(p.size());
    double cu = 0;
    for (std::size_t k = 0; k < u.size(); ++k) {
      u[k] = gauss(rng);
      cu += chart[k] * u[k];
    }
    PointD q(p.size());
    for (std::size_t k = 0; k < u.size(); ++k) q[k] = p[k] + u[k] - cu / cc * chart[k];
    const double push = unit(rng) * c / 2;
    const auto [ta, tb] = domain.chord_params(p, q);
    PointD moved = p;
    if (push > 0 && std::isfinite(tb) && tb > 0) moved = domain.geodesic(p, domain.lerp(p, q, tb / 2), push);
    out.path.push_back(std::move(moved));
    out.params.push_back(s);
  }
  return out;
}

PenetrationConstants penetration_constants(double Delta, double C, double c, double sigma_G) {
  PenetrationConstants out;
  out.sigma0 = std::max({10 * C, 1.0, sigma_G});
  out.bound = Delta + 10 * out.sigma0 + 18 * c * out.sigma0;
  return out;
}

ProjectionConstants projection_constants(const EmbeddedSimplex& s, const LinearProjection& l, double delta1,
                                         const SampleSpec& spec, double resolution) {
  const auto& dom = s.domain();
  std::mt19937_64 rng(spec.seed);
  const auto xs = interior_samples(dom, rng, spec.count, spec.max_weight);
  std::vector<PointD> zs;
  for (std::size_t k = 0; k < spec.count; ++k) zs.push_back(dom.normalize(sample_simplex(s, rng, spec.radius)));
  std::vector<PointD> lx;
  for (const auto& x : xs) lx.push_back(dom.normalize(l.project(x)));

  ProjectionConstants out;
  out.samples = xs.size();
  std::vector<double> d2(xs.size());
  parallel_for(xs.size(), [&](std::size_t k) {
    d2[k] = dom.distance(xs[k], lx[k]) == 0 ? 0.0 : thin_certify(dom, xs[k], zs[k], lx[k], resolution).delta;
  });
  for (double v : d2) out.delta2 = std::max(out.delta2, v);
  out.delta3 = delta1 + 3 * out.delta2;
  for (std::size_t k = 0; k < xs.size(); ++k) {
    const double lhs = dom.distance(xs[k], zs[k]);
    const double rhs = dom.distance(xs[k], lx[k]) + dom.distance(lx[k], zs[k]) - 2 * out.delta3;
    if (lhs < rhs - 1e-9) ++out.additivity_violations;
  }
  // Pairs (x_k, x_{k+1}); grow delta4 until every qualifying pair projects near its segment.
  const std::size_t pairs = xs.size() / 2;
  std::vector<double> gap(pairs);
  std::vector<double> spread(pairs);
  parallel_for(pairs, [&](std::size_t k) {
    const auto& x = xs[2 * k];
    const auto& y = xs[2 * k + 1];
    spread[k] = dom.distance(lx[2 * k], lx[2 * k + 1]);
    gap[k] = std::max(point_to_segment(dom, lx[2 * k], x, y), point_to_segment(dom, lx[2 * k + 1], x, y));
  });
  double d4 = 0;
  for (bool changed = true; changed;) {
    changed = false;
    for (std::size_t k = 0; k < pairs; ++k) {
      if (spread[k] >= d4 && gap[k] > d4) {
        d4 = gap[k];
        changed = true;
      }
    }
  }
  out.delta4 = d4;
  for (std::size_t k = 0; k < pairs; ++k) {
    const double R = spread[k] - 2 * d4;
    if (R <= 0) continue;
    const auto pts = sample_segment(dom, xs[2 * k], xs[2 * k + 1], std::max(resolution, 0.05));
    std::size_t first = pts.size();
    std::size_t last = 0;
    for (std::size_t m = 0; m < pts.size(); ++m) {
      if (distance_to_simplex(s, pts[m]) <= 2 * d4) {
        first = std::min(first, m);
        last = m;
      }
    }
    const double diam = first < pts.size() ? dom.distance(pts[first], pts[last]) : 0.0;
    if (diam < R - std::max(resolution, 0.05)) ++out.penetration_violations;
  }
  return out;
}

}  // namespace hilbertlab
