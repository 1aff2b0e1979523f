#pragma once

#include "hilbertlab/constructions.hpp"
#include "hilbertlab/quadric.hpp"
#include "hilbertlab/simplex.hpp"

#include <json.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace hilbertlab::json_io {

using Json = nlohmann::json;

/// 64-bit FNV-1a, printed as 16 hex digits.
std::string content_hash(std::string_view bytes);

Json to_json(const Rational& value);
Json to_json(const HPoint& x);
Json to_json(const PointD& x);
Json to_json(const EmbeddedSimplex& s);
Json to_json(const HilbertLength& h);

/// Strings go through parse_rational; JSON integers are exact; other numbers take their binary value.
Rational rational_from_json(const Json& j);
HPoint point_from_json(const Json& j);
Matrix matrix_from_json(const Json& j);

/// Builds the polytope, reusing a facet sidecar under $HILBERTLAB_CACHE when one matches.
DomainPtr load_polytope(std::vector<HPoint> vertices);

enum class DomainKind { Polytope, Klein };

struct Scene {
  DomainKind kind = DomainKind::Polytope;
  std::string mode = "rational";
  DomainPtr polytope;                                  // polytopal scenes, including products
  std::shared_ptr<const QuadricDomain> quadric;        // Klein scenes
  std::optional<ConeProduct> product;                  // set when the domain is a cone product
  std::vector<ProjMap> group;
  std::vector<std::vector<HPoint>> simplices;
  std::vector<HPoint> points;
  std::optional<std::uint64_t> seed;
  std::string hash;                                    // content hash of the normalized scene JSON

  const MetricDomain& metric() const;
};

/// Domain forms: {"dim","mode","vertices"}, {"kind":"klein","dim"}, {"kind":"simplex"|"square"|"interval"},
/// {"kind":"product","base":domain}, or one of the strings "triangle", "square", "interval", "tetrahedron".
Scene scene_from_json(const Json& j);
Scene load_scene(const std::string& path);

}  // namespace hilbertlab::json_io
