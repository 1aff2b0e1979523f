#include "hilbertlab/error.hpp"
#include "hilbertlab/json_io.hpp"

#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>

using namespace hilbertlab;
using namespace hilbertlab::json_io;

TEST(ContentHash, MatchesFnv1aReferenceValues) {
  EXPECT_EQ(content_hash(""), "cbf29ce484222325");
  EXPECT_EQ(content_hash("a"), "af63dc4c8601ec8c");
  EXPECT_EQ(content_hash("foobar"), "85944171f73967e8");
}

TEST(Serialization, RationalsAndPoints) {
  EXPECT_EQ(to_json(parse_rational("-6/4")), Json("-3/2"));
  EXPECT_EQ(to_json(HPoint{2, 4, 6}), Json::parse(R"(["1","2","3"])"));
  EXPECT_EQ(rational_from_json(Json("7/21")), Rational(1, 3));
  EXPECT_EQ(rational_from_json(Json(12345678901234LL)), Rational(12345678901234LL));
  EXPECT_EQ(rational_from_json(Json(0.5)), Rational(1, 2));
  EXPECT_THROW(rational_from_json(Json::object()), Error);
  const HPoint p{3, 1, 4};
  EXPECT_EQ(point_from_json(to_json(p)), p);
  EXPECT_THROW(point_from_json(Json::array()), Error);
}

TEST(Serialization, LengthsCarryTheExactRatio) {
  const auto t = make_simplex(3);
  const Json j = to_json(hilbert_distance(*t, HPoint{1, 1, 1}, HPoint{1, 2, 4}));
  EXPECT_EQ(j.at("q"), Json("4"));
  EXPECT_NEAR(j.at("H").get<double>(), std::log(2.0), 1e-12);
}

TEST(Scene, DomainForms) {
  EXPECT_EQ(scene_from_json(Json("triangle")).polytope->vertex_count(), 3u);
  EXPECT_EQ(scene_from_json(Json("tetrahedron")).polytope->vertex_count(), 4u);
  EXPECT_EQ(scene_from_json(Json("square")).polytope->vertex_count(), 4u);
  EXPECT_EQ(scene_from_json(Json::parse(R"({"domain":{"kind":"simplex","dim":5}})")).polytope->vertex_count(), 5u);
  const auto klein = scene_from_json(Json::parse(R"({"domain":{"kind":"klein","dim":3}})"));
  EXPECT_EQ(klein.kind, DomainKind::Klein);
  const auto prod = scene_from_json(Json::parse(R"({"domain":{"kind":"product","base":"triangle"}})"));
  ASSERT_TRUE(prod.product.has_value());
  EXPECT_EQ(prod.polytope->vertex_count(), 6u);
  const auto explicit_scene = scene_from_json(Json::parse(
      R"({"domain":{"dim":3,"mode":"rational","vertices":[[1,0,0],[0,1,0],[0,0,1]]},"points":[["1/2",1,1]],"seed":9})"));
  EXPECT_EQ(explicit_scene.points.front(), (HPoint{1, 2, 2}));
  EXPECT_EQ(explicit_scene.seed, 9u);
}

TEST(Scene, HashDependsOnContent) {
  const auto a = scene_from_json(Json::parse(R"({"domain":"triangle","seed":1})"));
  const auto b = scene_from_json(Json::parse(R"({"domain":"triangle","seed":1})"));
  const auto c = scene_from_json(Json::parse(R"({"domain":"triangle","seed":2})"));
  EXPECT_EQ(a.hash, b.hash);
  EXPECT_NE(a.hash, c.hash);
}

TEST(Scene, RejectsMalformedInput) {
  EXPECT_THROW(scene_from_json(Json::parse(R"({"domain":"hexagon"})")), Error);
  EXPECT_THROW(scene_from_json(Json::parse(R"({"domain":"triangle","points":[[1,1]]})")), Error);
  EXPECT_THROW(scene_from_json(Json::parse(R"({"domain":{"kind":"klein","dim":3},"simplices":[[[1,0,0],[0,1,0]]]})")),
               Error);
  EXPECT_THROW(scene_from_json(Json::parse(R"({"domain":"triangle","group":[[[1,0],[0,1]]]})")), Error);
  EXPECT_THROW(load_scene("/nonexistent/scene.json"), Error);
}

TEST(Scene, LoadsCheckedInScenes) {
  for (const char* name : {"triangle", "square", "tetrahedron", "omega_star_triangle", "klein", "omega_parallel",
                           "crossing_lines"}) {
    EXPECT_NO_THROW(load_scene(std::string(HILBERTLAB_SCENES) + "/" + name + ".json")) << name;
  }
}

TEST(FacetCache, SidecarIsWrittenAndReused) {
  const auto dir = std::filesystem::temp_directory_path() / "hilbertlab_cache_test";
  std::filesystem::remove_all(dir);
  ::setenv("HILBERTLAB_CACHE", dir.c_str(), 1);
  const std::vector<HPoint> verts{HPoint{1, -1, -1}, HPoint{1, 1, -1}, HPoint{1, 1, 1}, HPoint{1, -1, 1}};
  const auto first = load_polytope(verts);
  std::size_t files = 0;
  for (const auto& e : std::filesystem::directory_iterator(dir)) files += e.path().extension() == ".json";
  EXPECT_EQ(files, 1u);
  const auto second = load_polytope(verts);
  EXPECT_EQ(first->facets(), second->facets());
  ::unsetenv("HILBERTLAB_CACHE");
  std::filesystem::remove_all(dir);
}
