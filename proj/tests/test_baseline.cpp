#include <gtest/gtest.h>

#include <set>

#include "fixtures.hpp"
#include "uavcov/baseline.hpp"
#include "uavcov/error.hpp"
#include "uavcov/evaluator.hpp"

namespace uavcov {
namespace {

using testing::line_scenario;

TEST(Baseline, SingleZoneCycle) {
  const auto s = line_scenario(1, {0}, 1, 3, 12);
  const auto p = baseline_plan(s);
  for (int k = 0; k < 12; ++k)
    EXPECT_EQ(p.at(0, k), k % 4 == 3 ? Action::recharge(0) : Action::cover(0)) << "step " << k;
}

TEST(Baseline, WalksTheLine) {
  const auto s = line_scenario(3, {0}, 1, 50, 5);
  const auto p = baseline_plan(s);
  const std::vector<Action> want{Action::cover(0), Action::travel(0, 1), Action::cover(1),
                                 Action::travel(1, 2), Action::cover(2)};
  for (int k = 0; k < 5; ++k) EXPECT_EQ(p.at(0, k), want[k]) << "step " << k;
}

TEST(Baseline, ReturnsWhenBatteryMatchesDistance) {
  // B = 4 on a line: cover 0, travel, cover 1, then remaining 1 = distance 1.
  const auto s = line_scenario(3, {0}, 1, 4, 6);
  const auto p = baseline_plan(s);
  EXPECT_EQ(p.at(0, 2), Action::cover(1));
  EXPECT_EQ(p.at(0, 3), Action::travel(1, 0));
  EXPECT_EQ(p.at(0, 4), Action::recharge(0));
  EXPECT_TRUE(check_feasibility(p, s).empty());
}

TEST(Baseline, VisitsEveryZoneWithAmpleBattery) {
  GeneratorConfig c = GeneratorConfig::desk(3);
  c.battery_steps = 1000;
  c.num_steps = 4 * 25;
  const auto s = generate_scenario(c);
  const auto p = baseline_plan(s);
  for (int d = 0; d < p.num_uavs(); ++d) {
    std::set<int> covered;
    for (int k = 0; k < p.num_steps(); ++k)
      if (p.at(d, k).type == ActionType::Cover) covered.insert(p.at(d, k).zone);
    EXPECT_EQ(covered.size(), s.zones.size()) << "uav " << d;
  }
}

TEST(Baseline, FeasibleOnGeneratedScenarios) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto s = generate_scenario(GeneratorConfig::desk(seed));
    const auto p = baseline_plan(s);
    const auto v = check_feasibility(p, s);
    EXPECT_TRUE(v.empty()) << "seed " << seed << ": " << describe(v.front());
  }
}

TEST(Baseline, DisconnectedZoneRejected) {
  auto s = line_scenario(3, {0}, 1, 4, 6);
  s.zones.push_back({3, {9000.0, 9000.0}});
  EXPECT_THROW(baseline_plan(s), InstanceError);
}

TEST(Baseline, UniformAllocation) {
  auto s = line_scenario(2, {0}, 3, 4, 1, 3);
  ThroughputMatrix t(3, 2);
  t.at(0, 0) = t.at(1, 0) = 5;
  t.at(2, 1) = 5;
  Plan p(3, 1);
  p.at(0, 0) = p.at(1, 0) = Action::cover(0);
  p.at(2, 0) = Action::travel(0, 1);
  const auto m = uniform_allocation(p, s, t);
  ASSERT_EQ(m.entries.size(), 4u);
  for (const auto& e : m.entries) EXPECT_DOUBLE_EQ(e.phi, 0.25);
  EXPECT_DOUBLE_EQ(m.value(2, 0, 0, 0), 0.0);
}

TEST(ShortestZonePath, Cases) {
  GeneratorConfig c;
  c.zone_rows = c.zone_cols = 3;
  c.num_areas = 3;
  c.num_uavs = 1;
  c.num_recharge_sites = 1;
  const auto s = generate_scenario(c);
  EXPECT_EQ(shortest_zone_path(s, 4, 4), std::vector<int>{4});
  const auto corner = shortest_zone_path(s, 0, 8);
  EXPECT_EQ(corner.size(), 5u);
  // 0 -> 2 on the 3x3 grid: the only 2-hop path is through 1.
  EXPECT_EQ(shortest_zone_path(s, 0, 2), (std::vector<int>{0, 1, 2}));
  // Lexicographically smallest among equal-hop options: 0 -> 4 via 1.
  EXPECT_EQ(shortest_zone_path(s, 0, 4), (std::vector<int>{0, 1, 4}));
  auto cut = line_scenario(2, {0}, 1, 3, 1);
  cut.zones.push_back({2, {9000.0, 0.0}});
  EXPECT_THROW(shortest_zone_path(cut, 0, 2), InstanceError);
  EXPECT_THROW(shortest_zone_path(cut, 0, 7), InputError);
}

}  // namespace
}  // namespace uavcov
