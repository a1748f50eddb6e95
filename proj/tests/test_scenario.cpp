#include <gtest/gtest.h>

#include <filesystem>
#include <set>

#include "fixtures.hpp"
#include "uavcov/error.hpp"
#include "uavcov/io.hpp"
#include "uavcov/scenario.hpp"
#include "uavcov/zone_graph.hpp"

namespace uavcov {
namespace {

bool has_message(const std::vector<std::string>& v, const std::string& needle) {
  for (const auto& m : v)
    if (m.find(needle) != std::string::npos) return true;
  return false;
}

TEST(Generator, DefaultDimensions) {
  const auto s = generate_scenario(GeneratorConfig{});
  EXPECT_EQ(s.zones.size(), 100u);
  EXPECT_EQ(s.recharge_sites.size(), 7u);
  EXPECT_EQ(s.areas.size(), 500u);
  EXPECT_EQ(s.uavs.size(), 20u);
  EXPECT_EQ(s.num_steps, 150);
  EXPECT_DOUBLE_EQ(s.step_duration_s, 600.0);
  for (const auto& u : s.uavs) EXPECT_EQ(u.battery_steps, 20);
  const auto r = validate_scenario(s);
  EXPECT_TRUE(r.ok()) << (r.violations.empty() ? "" : r.violations.front());
}

TEST(Generator, DegenerateInstance) {
  GeneratorConfig c;
  c.zone_rows = c.zone_cols = 1;
  c.num_recharge_sites = 1;
  c.num_areas = 1;
  c.num_uavs = 1;
  const auto s = generate_scenario(c);
  EXPECT_TRUE(s.links.empty());
  EXPECT_TRUE(validate_scenario(s).ok());
}

TEST(Generator, Deterministic) {
  const auto a = scenario_to_json(generate_scenario(GeneratorConfig::desk(11)));
  const auto b = scenario_to_json(generate_scenario(GeneratorConfig::desk(11)));
  const auto c = scenario_to_json(generate_scenario(GeneratorConfig::desk(12)));
  EXPECT_EQ(a, b);
  EXPECT_NE(a, c);
}

TEST(Generator, InvalidConfigNamesField) {
  GeneratorConfig c;
  c.num_recharge_sites = 101;
  try {
    generate_scenario(c);
    FAIL();
  } catch (const ConfigError& e) {
    EXPECT_EQ(e.field(), "num_recharge_sites");
  }
  c = GeneratorConfig{};
  c.num_uavs = 0;
  EXPECT_THROW(generate_scenario(c), ConfigError);
}

TEST(Generator, InvariantsAcrossSeeds) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const auto s = generate_scenario(GeneratorConfig::desk(seed));
    const auto r = validate_scenario(s);
    ASSERT_TRUE(r.ok()) << "seed " << seed << ": " << r.violations.front();
    std::set<ZoneLink> links(s.links.begin(), s.links.end());
    for (const auto& l : s.links) {
      EXPECT_TRUE(links.contains({l.to, l.from}));
      EXPECT_LE(distance(s.zones[l.from].position, s.zones[l.to].position), s.link_range_m);
    }
    for (const auto& u : s.uavs) EXPECT_TRUE(s.is_recharge_site(u.home_zone));
    EXPECT_FALSE(s.area_graph.origins.empty());
    EXPECT_FALSE(s.area_graph.destinations.empty());
    // Every origin reaches a destination.
    auto routes = route_vehicles(s.areas, s.area_graph);
    for (const auto& r : routes) EXPECT_TRUE(r.has_value());
  }
}

TEST(Validation, LongLinkNamed) {
  auto s = testing::line_scenario(3, {0}, 1, 3, 4);
  s.links.push_back({0, 2});
  s.links.push_back({2, 0});
  std::sort(s.links.begin(), s.links.end());
  const auto r = validate_scenario(s);
  EXPECT_FALSE(r.ok());
  EXPECT_TRUE(has_message(r.violations, "link (0,2)"));
}

TEST(Validation, StructuralViolations) {
  auto s = testing::line_scenario(3, {0}, 1, 3, 4);
  s.uavs[0].home_zone = 1;
  EXPECT_TRUE(has_message(validate_scenario(s).violations, "home zone"));
  s = testing::line_scenario(3, {0}, 1, 3, 4);
  s.links.pop_back();
  EXPECT_TRUE(has_message(validate_scenario(s).violations, "no reverse link"));
  s = testing::line_scenario(3, {0}, 1, 3, 4);
  s.areas[0].storage_capacity = 0;
  EXPECT_FALSE(validate_scenario(s).ok());
  s = testing::line_scenario(3, {0}, 1, 3, 4);
  s.num_steps = 0;
  EXPECT_FALSE(validate_scenario(s).ok());
}

TEST(Validation, UnreachableAreaWarning) {
  auto s = testing::line_scenario(2, {0}, 1, 3, 4, 2);
  s.areas[1].position = {90000.0, 0.0};
  const auto t = build_throughput_matrix(s, RadioConfig{}, RateTable::default_table());
  const auto r = validate_scenario(s, &t);
  EXPECT_TRUE(r.ok());
  EXPECT_TRUE(has_message(r.warnings, "area unreachable"));
}

TEST(Validation, DisconnectedZoneWarning) {
  auto s = testing::line_scenario(3, {0}, 1, 3, 4);
  s.zones.push_back({3, {5000.0, 5000.0}});
  const auto r = validate_scenario(s);
  EXPECT_TRUE(r.ok());
  EXPECT_TRUE(has_message(r.warnings, "zone 3 is disconnected"));
}

TEST(Serialization, RoundTrip) {
  const auto s = generate_scenario(GeneratorConfig::desk(3));
  EXPECT_EQ(scenario_from_json(scenario_to_json(s)), s);
  const auto path = std::filesystem::temp_directory_path() / "uavcov_scenario_rt.json";
  write_scenario(s, path);
  EXPECT_EQ(read_scenario(path), s);
  std::filesystem::remove(path);
}

TEST(Serialization, TopLevelKeys) {
  const auto text = scenario_to_json(testing::line_scenario(2, {0}, 1, 3, 4));
  for (const char* key : {"\"zones\"", "\"areas\"", "\"links\"", "\"recharge_sites\"", "\"uavs\"",
                          "\"num_steps\"", "\"step_duration_s\"", "\"area_graph\""})
    EXPECT_NE(text.find(key), std::string::npos) << key;
}

TEST(Serialization, MalformedInput) {
  EXPECT_THROW(scenario_from_json("{"), InputError);
  EXPECT_THROW(scenario_from_json("{\"zones\": []}"), InputError);
  EXPECT_THROW(read_scenario("/nonexistent/file.json"), InputError);
}

TEST(ZoneGraph, ShortestPathsOnGrid) {
  GeneratorConfig c;
  c.zone_rows = c.zone_cols = 3;
  c.num_areas = 3;
  c.num_uavs = 1;
  c.num_recharge_sites = 1;
  const auto s = generate_scenario(c);
  const ZoneGraph g(s);
  const auto p = g.shortest_path(0, 8);
  EXPECT_EQ(p.size(), 5u);  // 4 hops
  EXPECT_EQ(p.front(), 0);
  EXPECT_EQ(p.back(), 8);
  EXPECT_EQ(g.shortest_path(4, 4), std::vector<int>{4});
}

}  // namespace
}  // namespace uavcov
