#include <gtest/gtest.h>

#include <filesystem>
#include <sstream>

#include "fixtures.hpp"
#include "uavcov/cli.hpp"
#include "uavcov/io.hpp"
#include "uavcov/plan.hpp"

namespace uavcov {
namespace {

namespace fs = std::filesystem;

struct Result {
  int code;
  std::string out, err;
};

Result run(std::vector<std::string> args) {
  args.insert(args.begin(), "uavcov");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir = fs::temp_directory_path() /
          ("uavcov_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir);
    fs::create_directories(dir);
  }
  void TearDown() override { fs::remove_all(dir); }
  std::string path(const std::string& name) const { return (dir / name).string(); }

  void small_inputs() {
    ASSERT_EQ(run({"gen", "--seed", "4", "--preset", "desk", "--rows", "2", "--cols", "2", "--areas",
                   "6", "--uavs", "2", "--sites", "1", "--battery", "3", "--steps", "8", "-o",
                   path("s.json")})
                  .code,
              0);
    ASSERT_EQ(run({"mobility", "--scenario", path("s.json"), "--seed", "4", "--vehicles", "5000",
                   "--spread", "3000", "-o", path("n.csv")})
                  .code,
              0);
    ASSERT_EQ(run({"linkbudget", "--scenario", path("s.json"), "-o", path("t.csv")}).code, 0);
  }

  fs::path dir;
};

TEST_F(Cli, GenIsDeterministic) {
  ASSERT_EQ(run({"gen", "--seed", "7", "--preset", "desk", "-o", path("a.json")}).code, 0);
  ASSERT_EQ(run({"gen", "--seed", "7", "--preset", "desk", "-o", path("b.json")}).code, 0);
  EXPECT_EQ(io::read_text(path("a.json")), io::read_text(path("b.json")));
}

TEST_F(Cli, UsageErrors) {
  EXPECT_EQ(run({"gen", "--bogus", "-o", path("a.json")}).code, 2);
  EXPECT_EQ(run({"gen"}).code, 2);
  EXPECT_EQ(run({}).code, 2);
  const auto r = run({"plan", "--strategy", "greedy", "--scenario", "x", "--counts", "y",
                      "--tmatrix", "z", "-o", path("p.json")});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("error"), std::string::npos);
  EXPECT_EQ(run({"--help"}).code, 0);
}

TEST_F(Cli, BaselineOnDisconnectedScenarioFails) {
  auto s = testing::line_scenario(3, {0}, 1, 4, 6);
  s.zones.push_back({3, {9000.0, 9000.0}});
  write_scenario(s, path("s.json"));
  io::write_text(path("n.csv"), "area_id,step,count\n0,0,1\n");
  io::write_text(path("t.csv"), "area_id,zone_id,throughput_bps\n0,0,1000\n");
  const auto r = run({"plan", "--strategy", "baseline", "--scenario", path("s.json"), "--counts",
                      path("n.csv"), "--tmatrix", path("t.csv"), "-o", path("p.json")});
  EXPECT_EQ(r.code, 1) << r.err;
  EXPECT_NE(r.err.find("error"), std::string::npos);
}

TEST_F(Cli, FullPipelineAndCompare) {
  small_inputs();
  for (const std::string strategy : {"relax", "baseline"}) {
    const auto p = run({"plan", "--strategy", strategy, "--horizon", "3", "--scenario", path("s.json"),
                        "--counts", path("n.csv"), "--tmatrix", path("t.csv"), "-o",
                        path(strategy + ".json")});
    ASSERT_EQ(p.code, 0) << p.err;
    ASSERT_TRUE(fs::exists(path(strategy + ".alloc.csv")));
    const auto e = run({"eval", "--scenario", path("s.json"), "--counts", path("n.csv"), "--tmatrix",
                        path("t.csv"), "--plan", path(strategy + ".json"), "--alloc",
                        path(strategy + ".alloc.csv"), "--horizon", "3", "-o", path(strategy + "_m")});
    ASSERT_EQ(e.code, 0) << e.err;
    for (const char* suffix : {".steps.csv", ".areas.csv", ".summary.json"})
      EXPECT_TRUE(fs::exists(path(strategy + "_m" + suffix))) << suffix;
  }
  const auto c = run({"compare", path("relax_m.summary.json"), path("baseline_m.summary.json")});
  ASSERT_EQ(c.code, 0) << c.err;
  EXPECT_NE(c.out.find("objective"), std::string::npos);
  EXPECT_NE(c.out.find("jain"), std::string::npos);
}

TEST_F(Cli, PlanIsReproducible) {
  small_inputs();
  for (const char* name : {"a", "b"})
    ASSERT_EQ(run({"plan", "--scenario", path("s.json"), "--counts", path("n.csv"), "--tmatrix",
                   path("t.csv"), "--horizon", "3", "-o", path(std::string(name) + ".json")})
                  .code,
              0);
  EXPECT_EQ(io::read_text(path("a.json")), io::read_text(path("b.json")));
  EXPECT_EQ(io::read_text(path("a.alloc.csv")), io::read_text(path("b.alloc.csv")));
}

TEST_F(Cli, EvalRejectsInfeasiblePlan) {
  small_inputs();
  const auto s = read_scenario(path("s.json"));
  Plan p(static_cast<int>(s.uavs.size()), s.num_steps);
  for (int d = 0; d < p.num_uavs(); ++d)
    for (int k = 0; k < p.num_steps(); ++k) p.at(d, k) = Action::cover(s.uavs[d].home_zone);
  io::write_text(path("p.json"), plan_to_json(p));
  io::write_text(path("a.csv"), "area_id,uav_id,step,zone_id,phi\n");
  const auto r = run({"eval", "--scenario", path("s.json"), "--counts", path("n.csv"), "--tmatrix",
                      path("t.csv"), "--plan", path("p.json"), "--alloc", path("a.csv"), "-o",
                      path("m")});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("infeasible"), std::string::npos);
  EXPECT_NE(r.err.find("battery"), std::string::npos);
}

}  // namespace
}  // namespace uavcov
