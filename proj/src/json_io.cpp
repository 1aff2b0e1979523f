#include "hilbertlab/json_io.hpp"
#include "hilbertlab/error.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace hilbertlab::json_io {
namespace {

DomainPtr named_polytope(const std::string& name) {
  if (name == "interval") return make_interval();
  if (name == "triangle") return make_simplex(3);
  if (name == "tetrahedron") return make_simplex(4);
  if (name == "square") return make_square();
  fail(ErrorKind::InvalidInput, "unknown domain name '" + name + "'");
}

struct LoadedDomain {
  DomainKind kind = DomainKind::Polytope;
  std::string mode = "rational";
  DomainPtr polytope;
  std::shared_ptr<const QuadricDomain> quadric;
  std::optional<ConeProduct> product;
};

LoadedDomain load_domain(const Json& j) {
  LoadedDomain out;
  if (j.is_string()) {
    out.polytope = named_polytope(j.get<std::string>());
    return out;
  }
  if (!j.is_object()) fail(ErrorKind::InvalidInput, "domain must be an object or a name");
  out.mode = j.value("mode", std::string("rational"));
  if (out.mode != "rational" && out.mode != "float") fail(ErrorKind::InvalidInput, "mode must be rational or float");
  const std::string kind = j.value("kind", std::string("polytope"));
  if (kind == "klein") {
    if (j.contains("mode") && out.mode != "float") fail(ErrorKind::InvalidInput, "a Klein domain is float-only");
    out.mode = "float";
    out.kind = DomainKind::Klein;
    out.quadric = klein_ball(j.at("dim").get<std::size_t>());
    return out;
  }
  if (kind == "simplex") {
    out.polytope = make_simplex(j.at("dim").get<std::size_t>());
    return out;
  }
  if (kind == "square" || kind == "interval" || kind == "triangle" || kind == "tetrahedron") {
    out.polytope = named_polytope(kind);
    return out;
  }
  if (kind == "product") {
    const LoadedDomain base = load_domain(j.at("base"));
    if (base.kind != DomainKind::Polytope) fail(ErrorKind::InvalidInput, "product base must be polytopal");
    out.product = product_domain(base.polytope);
    out.polytope = out.product->product;
    return out;
  }
  if (kind != "polytope") fail(ErrorKind::InvalidInput, "unknown domain kind '" + kind + "'");
  std::vector<HPoint> verts;
  for (const auto& v : j.at("vertices")) verts.push_back(point_from_json(v));
  if (j.contains("dim") && !verts.empty() && j.at("dim").get<std::size_t>() != verts.front().dim())
    fail(ErrorKind::InvalidInput, "vertex length does not match dim");
  out.polytope = load_polytope(std::move(verts));
  return out;
}

}  // namespace

std::string content_hash(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  std::ostringstream os;
  os << std::hex;
  os.width(16);
  os.fill('0');
  os << h;
  return os.str();
}

Json to_json(const Rational& value) { return format_rational(value); }

Json to_json(const HPoint& x) {
  const HPoint canon = x.canonical();
  Json out = Json::array();
  for (const auto& c : canon.coords()) out.push_back(format_rational(c));
  return out;
}

Json to_json(const PointD& x) { return Json(x); }

Json to_json(const EmbeddedSimplex& s) {
  Json verts = Json::array();
  for (const auto& v : s.vertices()) verts.push_back(to_json(v));
  return {{"vertices", verts}, {"dim", s.dim()}};
}

Json to_json(const HilbertLength& h) {
  Json out{{"H", h.value()}};
  out["q"] = h.is_exact() ? Json(format_rational(h.q())) : Json(nullptr);
  return out;
}

Rational rational_from_json(const Json& j) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return parse_rational(j.dump());
  if (j.is_number_float()) return from_double(j.get<double>());
  fail(ErrorKind::InvalidInput, "expected a rational, got " + j.dump());
}

HPoint point_from_json(const Json& j) {
  if (!j.is_array() || j.empty()) fail(ErrorKind::InvalidInput, "a point is a nonempty coordinate array");
  Vector v;
  for (const auto& c : j) v.push_back(rational_from_json(c));
  return HPoint(std::move(v));
}

Matrix matrix_from_json(const Json& j) {
  if (!j.is_array() || j.empty()) fail(ErrorKind::InvalidInput, "a matrix is a nonempty array of rows");
  Matrix m;
  for (const auto& row : j) {
    Vector r;
    for (const auto& c : row) r.push_back(rational_from_json(c));
    m.push_back(std::move(r));
  }
  return m;
}

DomainPtr load_polytope(std::vector<HPoint> vertices) {
  const char* dir = std::getenv("HILBERTLAB_CACHE");
  if (dir == nullptr || *dir == '\0') return PolytopeDomain::create(std::move(vertices));
  Json key = Json::array();
  for (const auto& v : vertices) key.push_back(to_json(v));
  const std::string text = key.dump();
  const std::filesystem::path file = std::filesystem::path(dir) / (content_hash(text) + ".facets.json");
  if (std::ifstream in(file); in) {
    try {
      const Json cached = Json::parse(in);
      if (cached.at("vertices") == key) return PolytopeDomain::create_with_facets(std::move(vertices), matrix_from_json(cached.at("facets")));
    } catch (const nlohmann::json::exception&) {
      // A corrupt sidecar is rebuilt below.
    }
  }
  DomainPtr d = PolytopeDomain::create(std::move(vertices));
  Json facets = Json::array();
  for (const auto& f : d->facets()) {
    Json row = Json::array();
    for (const auto& c : f) row.push_back(format_rational(c));
    facets.push_back(std::move(row));
  }
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  const auto tmp = file.string() + ".tmp";
  if (std::ofstream out(tmp); out) {
    out << Json{{"vertices", key}, {"facets", facets}}.dump() << '\n';
    out.close();
    std::filesystem::rename(tmp, file, ec);
  }
  return d;
}

const MetricDomain& Scene::metric() const {
  if (kind == DomainKind::Klein) return *quadric;
  return *polytope;
}

Scene scene_from_json(const Json& j) {
  Scene s;
  const Json& dom = j.is_object() && j.contains("domain") ? j.at("domain") : j;
  LoadedDomain d = load_domain(dom);
  s.kind = d.kind;
  s.mode = d.mode;
  s.polytope = std::move(d.polytope);
  s.quadric = std::move(d.quadric);
  s.product = std::move(d.product);
  if (j.is_object()) {
    if (j.contains("group"))
      for (const auto& g : j.at("group")) s.group.emplace_back(matrix_from_json(g));
    if (j.contains("simplices")) {
      for (const auto& sj : j.at("simplices")) {
        const Json& verts = sj.is_object() ? sj.at("vertices") : sj;
        std::vector<HPoint> vs;
        for (const auto& v : verts) vs.push_back(point_from_json(v));
        if (sj.is_object() && sj.contains("dim") && sj.at("dim").get<std::size_t>() + 1 != vs.size())
          fail(ErrorKind::InvalidInput, "simplex dim does not match its vertex count");
        s.simplices.push_back(std::move(vs));
      }
    }
    if (j.contains("points"))
      for (const auto& p : j.at("points")) s.points.push_back(point_from_json(p));
    if (j.contains("seed")) s.seed = j.at("seed").get<std::uint64_t>();
  }
  const std::size_t dim = s.kind == DomainKind::Klein ? s.quadric->ambient_dim() : s.polytope->ambient_dim();
  for (const auto& g : s.group)
    if (g.dim() != dim) fail(ErrorKind::InvalidInput, "group element dimension mismatch");
  for (const auto& p : s.points)
    if (p.dim() != dim) fail(ErrorKind::InvalidInput, "point dimension mismatch");
  for (const auto& sv : s.simplices) {
    if (s.kind != DomainKind::Polytope) fail(ErrorKind::InvalidInput, "simplices need a polytopal domain");
    for (const auto& p : sv)
      if (p.dim() != dim) fail(ErrorKind::InvalidInput, "simplex vertex dimension mismatch");
  }
  s.hash = content_hash(j.dump());
  return s;
}

Scene load_scene(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::InvalidInput, "cannot open scene file '" + path + "'");
  Json j;
  try {
    j = Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorKind::InvalidInput, std::string("scene is not valid JSON: ") + e.what());
  }
  return scene_from_json(j);
}

}  // namespace hilbertlab::json_io
