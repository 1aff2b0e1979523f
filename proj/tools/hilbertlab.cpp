// hilbertlab command-line front end. Every report is a pure function of (scene, flags, seed);
// --threads only sizes the worker pool.

#include "hilbertlab/constructions.hpp"
#include "hilbertlab/error.hpp"
#include "hilbertlab/json_io.hpp"
#include "hilbertlab/parallel.hpp"
#include "hilbertlab/projection.hpp"
#include "hilbertlab/rel_hyp.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

using namespace hilbertlab;
using json_io::Json;

namespace {

struct Options {
  std::string scene_path;
  std::optional<std::uint64_t> seed;
  unsigned threads = 0;
  double resolution = 0.01;
  std::optional<std::size_t> budget;
  bool json = false;
  std::string csv;
  std::optional<std::size_t> max_dim;
  std::size_t max_candidates = 64;
  bool timing = false;

  std::string x, y, z;
  std::size_t simplex = 0;
  std::size_t other = 1;
  std::size_t set = 0;
  std::string mode = "linear";
  std::string which;
  std::string example;
  std::string base = "triangle";
  double R = 1.0;
  std::size_t words = 6;
  double c = 1.0;
  double kappa = 1.0;
  std::optional<double> delta;
  std::string r_list = "1,3,6";
  std::string budgets = "10,20,40";
  std::string projection = "linear";
  std::optional<std::size_t> samples;
  bool exhaustive = false;
};

std::vector<std::string> split_list(std::string text) {
  for (char& ch : text)
    if (ch == '[' || ch == ']' || ch == '"' || ch == ',') ch = ' ';
  std::istringstream in(text);
  std::vector<std::string> out;
  for (std::string tok; in >> tok;) out.push_back(tok);
  return out;
}

HPoint parse_point(const std::string& text) {
  Vector v;
  for (const auto& tok : split_list(text)) v.push_back(parse_rational(tok));
  if (v.empty()) fail(ErrorKind::InvalidInput, "empty point '" + text + "'");
  return HPoint(std::move(v));
}

std::vector<double> parse_doubles(const std::string& text) {
  std::vector<double> out;
  for (const auto& tok : split_list(text)) out.push_back(to_double(parse_rational(tok)));
  return out;
}

class Runner {
 public:
  explicit Runner(const Options& o) : opt_(o) {}

  Json run(const std::string& command) {
    if (command == "example") {
      if (!opt_.scene_path.empty()) scene_ = json_io::load_scene(opt_.scene_path);
    } else {
      if (opt_.scene_path.empty()) fail(ErrorKind::InvalidInput, "--scene is required");
      scene_ = json_io::load_scene(opt_.scene_path);
    }
    seed_ = opt_.seed ? *opt_.seed : (scene_ && scene_->seed ? *scene_->seed : 1);
    if (command == "dist") return dist();
    if (command == "simplices") return simplices();
    if (command == "project") return project();
    if (command == "certify") return certify();
    return example();
  }

  std::uint64_t seed() const { return seed_; }
  std::string scene_hash() const { return scene_ ? scene_->hash : std::string("none"); }
  const std::vector<std::string>& csv_rows() const { return csv_; }

 private:
  const json_io::Scene& scene() const { return *scene_; }

  const PolytopeDomain& polytope() const {
    if (scene().kind != json_io::DomainKind::Polytope) fail(ErrorKind::InvalidInput, "command needs a polytopal scene");
    return *scene().polytope;
  }

  HPoint point_arg(const std::string& flag_value, std::size_t index) const {
    if (!flag_value.empty()) return parse_point(flag_value);
    if (index < scene().points.size()) return scene().points[index];
    fail(ErrorKind::InvalidInput, "missing point " + std::to_string(index) + " (pass it on the command line or in the scene)");
  }

  PointD point_d(const HPoint& x) const {
    const auto& m = scene().metric();
    if (x.dim() != m.ambient_dim()) fail(ErrorKind::InvalidInput, "point dimension mismatch");
    const PointD v = x.to_doubles();
    double c = 0;
    for (std::size_t i = 0; i < v.size(); ++i) c += v[i] * m.chart_functional()[i];
    if (c == 0) fail(ErrorKind::NoCommonChart, "point lies on the chart's hyperplane at infinity");
    return m.normalize(v);
  }

  void require_interior(const PointD& x) const {
    if (!scene().metric().is_interior(x)) fail(ErrorKind::NotInterior, "point is not interior");
  }

  std::size_t sample_count(std::size_t fallback) const { return opt_.samples ? *opt_.samples : fallback; }

  EmbeddedSimplex simplex_at(std::size_t i) const {
    if (i < scene().simplices.size()) return EmbeddedSimplex::recognize(scene().polytope, scene().simplices[i]);
    if (i == 0 && scene().simplices.empty() && scene().product) return scene().product->diagonal();
    fail(ErrorKind::InvalidInput, "scene has no simplex " + std::to_string(i));
  }

  std::vector<EmbeddedSimplex> family() const {
    std::vector<EmbeddedSimplex> out;
    for (std::size_t i = 0; i < scene().simplices.size(); ++i) out.push_back(simplex_at(i));
    if (out.empty()) out = enumerate_max_simplices(scene().polytope, enumeration_options()).members;
    return out;
  }

  EnumerationOptions enumeration_options() const {
    EnumerationOptions e;
    e.max_candidates = opt_.max_candidates;
    if (opt_.budget) e.node_budget = *opt_.budget;
    e.max_dim = opt_.max_dim;
    return e;
  }

  SampleSpec sample_spec(std::size_t fallback) const {
    SampleSpec s;
    s.count = sample_count(fallback);
    s.seed = seed_;
    return s;
  }

  Json dist() {
    const HPoint x = point_arg(opt_.x, 0);
    const HPoint y = point_arg(opt_.y, 1);
    const PointD xd = point_d(x);
    const PointD yd = point_d(y);
    require_interior(xd);
    require_interior(yd);
    if (scene().kind == json_io::DomainKind::Polytope && scene().mode == "rational")
      return json_io::to_json(hilbert_distance(*scene().polytope, x, y));
    return Json{{"q", nullptr}, {"H", scene().metric().distance(xd, yd)}};
  }

  Json simplices() {
    Json out;
    if (scene().kind != json_io::DomainKind::Polytope) {
      out["members"] = Json::array();
      out["classes"] = Json::array();
      out["canonical"] = nullptr;
      out["note"] = "strictly convex domain: no properly embedded simplices of dimension >= 1";
      return out;
    }
    const SimplexFamily fam = enumerate_max_simplices(scene().polytope, enumeration_options());
    out["members"] = Json::array();
    for (const auto& s : fam.members) out["members"].push_back(json_io::to_json(s));
    out["candidates"] = fam.candidates;
    out["nodes"] = fam.nodes;
    out["found"] = fam.found;
    out["status"] = {{"isolated", to_string(fam.isolated)},
                     {"coarsely_complete", to_string(fam.coarsely_complete)},
                     {"invariant", to_string(fam.invariant)}};
    const auto classes = parallel_classes(fam.members);
    out["classes"] = classes;
    if (scene().points.empty()) {
      out["canonical"] = nullptr;
      return out;
    }
    out["canonical"] = Json::array();
    for (const auto& cls : classes) {
      try {
        out["canonical"].push_back(json_io::to_json(canonicalize(scene().polytope, scene().points, fam.members[cls.front()])));
      } catch (const Error& e) {
        out["canonical"].push_back(Json{{"error", std::string(to_string(e.kind()))}});
      }
    }
    return out;
  }

  Json project() {
    const EmbeddedSimplex s = simplex_at(opt_.simplex);
    const auto sets = supporting_sets(s);
    Json out{{"mode", opt_.mode}, {"simplex", json_io::to_json(s)}, {"supporting_sets", sets.size()}};
    if (opt_.mode == "linear") {
      if (opt_.set >= sets.size()) fail(ErrorKind::InvalidInput, "supporting set index out of range");
      const LinearProjection l = build_projection(s, sets[opt_.set]);
      out["set"] = sets[opt_.set].facet_indices;
      Json m = Json::array();
      for (const auto& row : l.matrix()) {
        Json r = Json::array();
        for (const auto& v : row) r.push_back(format_rational(v));
        m.push_back(std::move(r));
      }
      out["matrix"] = std::move(m);
      out["kernel_dim"] = l.kernel().dim();
      out["images"] = Json::array();
      for (const auto& x : scene().points) {
        Json item{{"x", json_io::to_json(x)}};
        try {
          item["lx"] = json_io::to_json(l.project(x));
        } catch (const Error& e) {
          item["error"] = std::string(to_string(e.kind()));
        }
        out["images"].push_back(std::move(item));
      }
    } else if (opt_.mode == "closest") {
      out["points"] = Json::array();
      for (const auto& x : scene().points) {
        const ClosestPoint cp = closest_point(s, x);
        out["points"].push_back(Json{{"x", json_io::to_json(x)},
                                     {"point", cp.point},
                                     {"radius", cp.radius},
                                     {"flat_diameter", cp.flat_diameter},
                                     {"extremes", cp.extremes.size()}});
      }
    } else {
      const ProjectionReport rep = coarse_gap(s, sample_count(1000), seed_);
      out["delta1"] = rep.delta1;
      out["delta1_first_set"] = rep.delta1_first_set;
      out["samples"] = rep.samples;
      out["witness"] = {{"x", rep.witness_x}, {"lx", rep.witness_lx}, {"p", rep.witness_p}, {"set", rep.witness_set}};
      const LinearProjection l = build_projection(s, sets.front());
      const ProjectionConstants pc = projection_constants(s, l, rep.delta1, sample_spec(64), opt_.resolution);
      out["delta2"] = pc.delta2;
      out["delta3"] = pc.delta3;
      out["delta4"] = pc.delta4;
      out["additivity_violations"] = pc.additivity_violations;
      out["penetration_violations"] = pc.penetration_violations;
    }
    return out;
  }

  std::array<PointD, 3> triangle() const {
    std::array<PointD, 3> t{point_d(point_arg(opt_.x, 0)), point_d(point_arg(opt_.y, 1)), point_d(point_arg(opt_.z, 2))};
    for (const auto& p : t) require_interior(p);
    return t;
  }

  Json certify() {
    Json out{{"check", opt_.which}};
    const auto& m = scene().metric();
    if (opt_.which == "thin") {
      const auto t = triangle();
      const ThinCert cert = opt_.exhaustive ? thin_certify_exhaustive(m, t[0], t[1], t[2], opt_.resolution)
                                            : thin_certify(m, t[0], t[1], t[2], opt_.resolution);
      out["triangle"] = {cert.triangle[0], cert.triangle[1], cert.triangle[2]};
      out["method"] = to_string(cert.method);
      out["R"] = cert.R;
      out["delta"] = cert.delta;
      out["resolution"] = cert.resolution;
      out["samples"] = cert.samples;
    } else if (opt_.which == "aps") {
      polytope();
      const auto fam = family();
      const APSReport rep = aps_check(fam, opt_.projection == "closest" ? ProjectionKind::ClosestPoint : ProjectionKind::Linear,
                                      sample_spec(64));
      out["projection"] = opt_.projection;
      out["C"] = rep.C;
      out["samples"] = rep.samples;
      out["members"] = rep.members;
    } else if (opt_.which == "isolation") {
      polytope();
      const EmbeddedSimplex a = simplex_at(opt_.simplex);
      const EmbeddedSimplex b = simplex_at(opt_.other);
      const IsolationReport rep = isolation_diameter(a, b, parse_doubles(opt_.r_list), parse_doubles(opt_.budgets), sample_spec(64));
      out["rows"] = Json::array();
      csv_.push_back("r,budget,D_hat");
      for (const auto& row : rep.rows) {
        out["rows"].push_back(Json{{"r", row.r}, {"budget", row.budget}, {"D_hat", row.d_hat}, {"collected", row.collected}});
        csv_.push_back(Json(row.r).dump() + "," + Json(row.budget).dump() + "," + Json(row.d_hat).dump());
      }
      out["slope"] = rep.slope;
      out["growth"] = rep.growth;
      out["samples_per_budget"] = rep.samples_per_budget;
    } else if (opt_.which == "transverse") {
      polytope();
      const auto fam = family();
      const TransverseCheck tc = transverse_measure(fam, triangle(), opt_.kappa, opt_.resolution);
      out["kappa"] = tc.kappa;
      out["Delta"] = tc.Delta;
      out["per_edge"] = tc.per_edge;
      out["resolution"] = tc.resolution;
    } else {
      const PointD x = point_d(point_arg(opt_.x, 0));
      const PointD y = point_d(point_arg(opt_.y, 1));
      require_interior(x);
      require_interior(y);
      double delta = 0;
      if (opt_.delta) {
        delta = *opt_.delta;
      } else {
        const auto t = triangle();
        delta = thin_certify_exhaustive(m, t[0], t[1], t[2], opt_.resolution).delta;
      }
      std::mt19937_64 rng(seed_);
      const QuasiGeodesic qg = perturbed_geodesic(m, x, y, sample_count(64), opt_.c, rng);
      const MorseReport rep = morse_check(m, qg.path, qg.params, opt_.c, delta, opt_.resolution);
      out["passes"] = rep.passes;
      out["gap"] = rep.gap;
      out["bound"] = rep.bound;
      out["c"] = rep.c;
      out["delta"] = rep.delta;
      out["samples"] = rep.samples;
    }
    return out;
  }

  DomainPtr base_domain() const {
    if (scene_) {
      if (scene().product) return scene().product->base;
      if (scene().kind == json_io::DomainKind::Polytope) return scene().polytope;
      fail(ErrorKind::InvalidInput, "examples need a polytopal base");
    }
    return json_io::scene_from_json(Json(opt_.base)).polytope;
  }

  static Json face_json(VertexMask face) {
    Json out = Json::array();
    for (std::size_t i = 0; i < kMaxVertices; ++i)
      if (face >> i & 1) out.push_back(i);
    return out;
  }

  Json example() {
    const DomainPtr base = base_domain();
    Json out{{"example", opt_.example}};
    if (opt_.example == "rescale") {
      const auto& v = base->vertices();
      if (v.size() < 3) fail(ErrorKind::InvalidInput, "rescaling needs at least three base vertices");
      auto mid = [&](const HPoint& p, const HPoint& q) {
        return HPoint(linalg::add_scaled(base->normalized_lift(p), Rational(1), base->normalized_lift(q)));
      };
      const bool given = scene_ && scene().points.size() >= 3;
      const HPoint a = given ? scene().points[0] : mid(v[0], v[1]);
      const HPoint b = given ? scene().points[1] : v[1];
      const HPoint c = given ? scene().points[2] : mid(v[1], v[2]);
      out["a"] = json_io::to_json(a);
      out["b"] = json_io::to_json(b);
      out["c"] = json_io::to_json(c);
      out["steps"] = Json::array();
      for (std::size_t n = 0; n <= opt_.words; ++n) {
        const RescaleStep st = benzecri_rescale(*base, a, b, c, n);
        out["steps"].push_back(Json{{"n", n}, {"gap", st.gap}, {"p", json_io::to_json(st.p)}, {"p_interior", st.p_interior}});
      }
      return out;
    }
    if (opt_.example == "orbit") return orbit(base);

    const ConeProduct cp = product_domain(base);
    const Rational q_r = std::max(Rational(1), rational_floor(std::exp(2 * opt_.R)));
    if (opt_.example == "product") {
      out["base_vertices"] = base->vertex_count();
      out["vertices"] = Json::array();
      for (const auto& v : cp.product->vertices()) out["vertices"].push_back(json_io::to_json(v));
      out["facets"] = cp.product->facets().size();
      out["dim"] = cp.product->dim();
      try {
        out["diagonal"] = json_io::to_json(cp.diagonal());
      } catch (const Error& e) {
        out["diagonal"] = Json{{"error", std::string(to_string(e.kind()))}};
      }
    } else if (opt_.example == "thicken") {
      const std::size_t n = sample_count(64);
      const ThickenReport rep = thicken(cp, opt_.R, n, n, seed_);
      out["R"] = rep.R;
      out["q_R"] = format_rational(rep.q_R);
      out["s_plus"] = format_rational(rep.s_plus);
      out["s_minus"] = format_rational(rep.s_minus);
      out["inner_count"] = rep.inner.size();
      out["inner_exact_ok"] = rep.inner_exact_ok;
      out["inner_max"] = rep.inner_max;
      out["hull_count"] = rep.hull_points.size();
      out["hull_max"] = rep.hull_max;
      out["combination_bound_ok"] = rep.combination_bound_ok;
      out["outer_bound"] = std::pow(2.0, static_cast<double>(base->ambient_dim()) - 1) * opt_.R;
      out["outer_bound_ok"] = rep.outer_bound_ok;
    } else if (opt_.example == "parallel") {
      if (q_r == 1) fail(ErrorKind::DegenerateInterval, "R too small for distinct interval endpoints");
      const auto fam = parallel_family(cp, base->vertices(), q_r, 1 / q_r);
      bool all_parallel = true;
      bool all_distinct = true;
      for (std::size_t i = 0; i < fam.size(); ++i)
        for (std::size_t j = i + 1; j < fam.size(); ++j) {
          all_parallel = all_parallel && are_parallel(fam[i], fam[j]).has_value();
          all_distinct = all_distinct && !(fam[i] == fam[j]);
        }
      std::vector<HPoint> core;
      for (const auto& v : base->vertices()) {
        core.push_back(cp.lift(v, q_r));
        core.push_back(cp.lift(v, 1 / q_r));
      }
      out["s_plus"] = format_rational(q_r);
      out["s_minus"] = format_rational(1 / q_r);
      out["members"] = Json::array();
      for (const auto& s : fam) out["members"].push_back(json_io::to_json(s));
      out["pairwise_parallel"] = all_parallel;
      out["pairwise_distinct"] = all_distinct;
      const EmbeddedSimplex canon = canonicalize(cp.product, core, fam.front());
      bool agree = true;
      for (const auto& s : fam) agree = agree && canonicalize(cp.product, core, s) == canon;
      out["canonical"] = json_io::to_json(canon);
      out["canonical_agree"] = agree;
    } else {
      fail(ErrorKind::InvalidInput, "unknown example '" + opt_.example + "'");
    }
    return out;
  }

  Json orbit(const DomainPtr& base) {
    DomainPtr dom = base;
    std::vector<ProjMap> gens;
    if (scene_) {
      dom = scene().polytope;
      gens = scene().group;
    }
    if (gens.empty()) {
      if (base->vertex_count() != 3 || base->ambient_dim() != 3) fail(ErrorKind::InvalidInput, "orbit example needs a group in the scene");
      gens = {ProjMap::diagonal({8, 1, 1}), ProjMap::diagonal({1, 8, 1})};
      if (scene_ && scene().product)
        for (auto& g : gens) g = doubled(g);
    }
    const HPoint basepoint = scene_ && !scene().points.empty() ? scene().points.front() : HPoint(dom->barycenter(dom->all_vertices()));
    const OrbitReport rep = orbit_sample(*dom, gens, basepoint, opt_.words, 1e-3, sample_count(64), seed_);
    Json out{{"example", "orbit"}, {"words", opt_.words}, {"orbit_size", rep.points.size()}, {"core_fraction", rep.core_fraction},
             {"probes", rep.probes}};
    out["limit"] = Json::array();
    for (const auto& l : rep.limit)
      out["limit"].push_back(Json{{"point", json_io::to_json(l.point)}, {"face", face_json(l.face)}, {"distance", l.distance}});
    try {
      const LatticeReport lat = stabilizer_lattice(dom->vertices(), gens);
      out["lattice"] = {{"rank", lat.rank}, {"log_vectors", lat.log_vectors}, {"basis", lat.basis}};
    } catch (const Error& e) {
      out["lattice"] = Json{{"error", std::string(to_string(e.kind()))}};
    }
    return out;
  }

  const Options& opt_;
  std::optional<json_io::Scene> scene_;
  std::uint64_t seed_ = 1;
  std::vector<std::string> csv_;
};

void print_text(const Json& outputs) {
  for (const auto& [key, value] : outputs.items()) {
    if (value.is_array()) std::cout << key << ": [" << value.size() << " entries]\n";
    else if (value.is_object()) std::cout << key << ": " << value.dump() << '\n';
    else if (value.is_string()) std::cout << key << ": " << value.get<std::string>() << '\n';
    else std::cout << key << ": " << value.dump() << '\n';
  }
}

int exit_code(ErrorKind kind) {
  switch (classify(kind)) {
    case ErrorClass::Precondition: return 2;
    case ErrorClass::Budget: return 3;
    case ErrorClass::InvariantTrap: return 4;
  }
  return 4;
}

int report_error(std::string_view kind, const std::string& message, int code) {
  std::cout << Json{{"error", {{"kind", kind}, {"message", message}, {"exit_code", code}}}}.dump(2) << '\n';
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  Options o;
  CLI::App app{"Hilbert geometry of properly convex projective domains"};
  app.set_version_flag("--version", std::string(HILBERTLAB_VERSION));
  app.require_subcommand(1);

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--scene", o.scene_path, "Scene JSON file");
    cmd->add_option("--seed", o.seed, "Random seed (overrides the scene seed)");
    cmd->add_option("--threads", o.threads, "Worker threads (0: hardware concurrency)");
    cmd->add_option("--resolution", o.resolution, "Hilbert-length sampling step")->check(CLI::PositiveNumber);
    cmd->add_option("--budget", o.budget, "Node budget for simplex enumeration");
    cmd->add_flag("--json", o.json, "Emit the full JSON report");
    cmd->add_option("--csv", o.csv, "Write table-shaped results to this CSV file");
    cmd->add_option("--max-dim", o.max_dim, "Largest simplex dimension to enumerate");
    cmd->add_option("--max-candidates", o.max_candidates, "Largest admissible candidate-point count");
    cmd->add_option("--samples", o.samples, "Sample count for randomized checks");
    cmd->add_flag("--timing", o.timing, "Include wall time (output is then not reproducible)");
  };

  auto* dist = app.add_subcommand("dist", "Hilbert distance between two interior points");
  add_common(dist);
  dist->add_option("--x", o.x, "First point, e.g. 1,2,4");
  dist->add_option("--y", o.y, "Second point");

  auto* simp = app.add_subcommand("simplices", "Enumerate maximal properly embedded simplices");
  add_common(simp);

  auto* proj = app.add_subcommand("project", "Projections onto a simplex");
  add_common(proj);
  proj->add_option("--mode", o.mode, "linear|closest|gap")->check(CLI::IsMember({"linear", "closest", "gap"}));
  proj->add_option("--simplex", o.simplex, "Scene simplex index");
  proj->add_option("--set", o.set, "Supporting set index for linear mode");

  auto* cert = app.add_subcommand("certify", "Coarse-geometry certificates");
  add_common(cert);
  cert->add_option("which", o.which, "thin|aps|isolation|transverse|morse")
      ->required()
      ->check(CLI::IsMember({"thin", "aps", "isolation", "transverse", "morse"}));
  cert->add_option("--x", o.x, "First point");
  cert->add_option("--y", o.y, "Second point");
  cert->add_option("--z", o.z, "Third point");
  cert->add_flag("--exhaustive", o.exhaustive, "Thin check against every side");
  cert->add_option("--projection", o.projection, "linear|closest")->check(CLI::IsMember({"linear", "closest"}));
  cert->add_option("--simplex", o.simplex, "First scene simplex index");
  cert->add_option("--other", o.other, "Second scene simplex index");
  cert->add_option("--r", o.r_list, "Neighbourhood radii, comma separated");
  cert->add_option("--budgets", o.budgets, "Distance budgets, comma separated");
  cert->add_option("--kappa", o.kappa, "Neighbourhood size for the transverse check");
  cert->add_option("--c", o.c, "Additive quasi-geodesic constant")->check(CLI::NonNegativeNumber);
  cert->add_option("--delta", o.delta, "Thinness constant; measured from three scene points when absent");

  auto* ex = app.add_subcommand("example", "Worked constructions");
  add_common(ex);
  ex->add_option("which", o.example, "product|thicken|parallel|rescale|orbit")
      ->required()
      ->check(CLI::IsMember({"product", "thicken", "parallel", "rescale", "orbit"}));
  ex->add_option("--base", o.base, "triangle|square|interval|tetrahedron");
  ex->add_option("--R", o.R, "Thickening radius")->check(CLI::NonNegativeNumber);
  ex->add_option("--words", o.words, "Word length or rescaling steps");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    return report_error("InvalidInput", e.what(), 2);
  }

  const std::string command = app.get_subcommands().front()->get_name();
  if (o.threads > 0) set_thread_count(o.threads);
  const auto start = std::chrono::steady_clock::now();
  Runner runner(o);
  try {
    Json outputs = runner.run(command);
    // Pool size never changes results, so it stays out of the input hash.
    std::vector<std::string> args;
    for (int i = 1; i < argc; ++i) {
      const std::string a = argv[i];
      if (a == "--threads") ++i;
      else if (a.rfind("--threads=", 0) != 0 && a != "--timing") args.push_back(a);
    }
    const Json inputs{{"command", command}, {"scene", runner.scene_hash()}, {"seed", runner.seed()}, {"args", args}};
    Json report{{"command", command},
                {"inputs_hash", json_io::content_hash(inputs.dump())},
                {"seed", runner.seed()},
                {"version", HILBERTLAB_VERSION},
                {"outputs", outputs}};
    if (o.timing)
      report["wall_time_s"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (!o.csv.empty() && !runner.csv_rows().empty()) {
      std::ofstream csv(o.csv);
      if (!csv) return report_error("InvalidInput", "cannot write " + o.csv, 2);
      for (const auto& row : runner.csv_rows()) csv << row << '\n';
    }
    if (o.json) std::cout << report.dump(2) << '\n';
    else print_text(outputs);
    return 0;
  } catch (const Error& e) {
    return report_error(to_string(e.kind()), e.what(), exit_code(e.kind()));
  } catch (const nlohmann::json::exception& e) {
    return report_error("InvalidInput", e.what(), 2);
  } catch (const std::exception& e) {
    return report_error("InternalError", e.what(), 4);
  }
}
