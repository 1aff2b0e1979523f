#include <json.hpp>

#include <gtest/gtest.h>

#include <array>
#include <cstdio>
#include <fstream>
#include <string>
#include <sys/wait.h>

namespace {

using Json = nlohmann::json;

struct Run {
  int exit_code = -1;
  std::string out;
};

Run run(const std::string& args) {
  const std::string cmd = std::string(HILBERTLAB_CLI) + " " + args + " 2>/dev/null";
  Run r;
  FILE* pipe = ::popen(cmd.c_str(), "r");
  if (pipe == nullptr) return r;
  std::array<char, 4096> buf{};
  std::size_t n = 0;
  while ((n = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
  const int status = ::pclose(pipe);
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string scene(const std::string& name) { return std::string("--scene ") + HILBERTLAB_SCENES + "/" + name + ".json"; }

}  // namespace

TEST(Cli, DistReportsTheExactRatio) {
  const auto r = run("dist " + scene("triangle") + " --x 1,1,1 --y 1,2,4 --json");
  ASSERT_EQ(r.exit_code, 0);
  const Json j = Json::parse(r.out);
  EXPECT_EQ(j.at("command"), "dist");
  EXPECT_EQ(j.at("outputs").at("q"), "4");
  EXPECT_NEAR(j.at("outputs").at("H").get<double>(), std::log(2.0), 1e-12);
  EXPECT_EQ(j.at("seed"), 7);
  EXPECT_FALSE(j.contains("wall_time_s"));
}

TEST(Cli, DistOfAPointToItselfIsZero) {
  const auto r = run("dist " + scene("triangle") + " --x 1,2,4 --y 2,4,8 --json");
  ASSERT_EQ(r.exit_code, 0);
  const Json j = Json::parse(r.out);
  EXPECT_EQ(j.at("outputs").at("q"), "1");
  EXPECT_EQ(j.at("outputs").at("H").get<double>(), 0.0);
}

TEST(Cli, PreconditionFailuresExitWithTwo) {
  const auto r = run("dist " + scene("triangle") + " --x 1,1,1 --y 1,0,1 --json");
  EXPECT_EQ(r.exit_code, 2);
  const Json j = Json::parse(r.out);
  EXPECT_EQ(j.at("error").at("kind"), "NotInterior");
  EXPECT_EQ(j.at("error").at("exit_code"), 2);
  EXPECT_EQ(run("dist --scene /nonexistent.json --x 1 --y 1").exit_code, 2);
  EXPECT_EQ(run("frobnicate").exit_code, 2);
}

TEST(Cli, BudgetExhaustionExitsWithThree) {
  const auto r = run("simplices " + scene("square") + " --budget 5 --json");
  EXPECT_EQ(r.exit_code, 3);
  EXPECT_EQ(Json::parse(r.out).at("error").at("kind"), "BudgetExceeded");
}

TEST(Cli, KleinDomainHasNoSimplices) {
  const auto r = run("simplices " + scene("klein") + " --json");
  ASSERT_EQ(r.exit_code, 0);
  EXPECT_TRUE(Json::parse(r.out).at("outputs").at("members").empty());
}

TEST(Cli, OmegaStarFamilyMatchesTheFrozenFixture) {
  const auto r = run("simplices " + scene("omega_star_triangle") + " --json");
  ASSERT_EQ(r.exit_code, 0);
  std::ifstream in(std::string(HILBERTLAB_FIXTURES) + "/omega_star_family.json");
  const Json fixture = Json::parse(in);
  EXPECT_EQ(Json::parse(r.out).at("outputs").at("members"), fixture.at("members"));
}

TEST(Cli, InputsHashIgnoresThreadsAndTracksArguments) {
  const auto a = Json::parse(run("dist " + scene("triangle") + " --x 1,1,1 --y 1,2,4 --json --threads 1").out);
  const auto b = Json::parse(run("dist " + scene("triangle") + " --x 1,1,1 --y 1,2,4 --json --threads 4").out);
  const auto c = Json::parse(run("dist " + scene("triangle") + " --x 1,1,1 --y 1,2,5 --json").out);
  EXPECT_EQ(a, b);
  EXPECT_NE(a.at("inputs_hash"), c.at("inputs_hash"));
}

TEST(Cli, TimingAddsWallTime) {
  const auto j = Json::parse(run("dist " + scene("triangle") + " --x 1,1,1 --y 1,2,4 --json --timing").out);
  EXPECT_TRUE(j.contains("wall_time_s"));
}

TEST(Cli, IsolationSeesParallelGrowth) {
  const auto r = run("certify isolation " + scene("omega_parallel") + " --simplex 0 --other 1 --r 1,3 --budgets 5,10,20 --json");
  ASSERT_EQ(r.exit_code, 0);
  EXPECT_TRUE(Json::parse(r.out).at("outputs").at("growth").get<bool>());
}

TEST(Cli, TextModeListsTopLevelKeys) {
  const auto r = run("dist " + scene("triangle") + " --x 1,1,1 --y 1,2,4");
  ASSERT_EQ(r.exit_code, 0);
  EXPECT_NE(r.out.find("q: 4"), std::string::npos);
}

TEST(Cli, CsvTableForIsolation) {
  const std::string path = ::testing::TempDir() + "/iso.csv";
  const auto r = run("certify isolation " + scene("omega_parallel") + " --simplex 0 --other 1 --r 1 --budgets 5,10 --csv " + path);
  ASSERT_EQ(r.exit_code, 0);
  std::ifstream in(path);
  std::string header;
  std::getline(in, header);
  EXPECT_EQ(header, "r,budget,D_hat");
}
