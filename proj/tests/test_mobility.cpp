#include <gtest/gtest.h>

#include <map>

#include "fixtures.hpp"
#include "uavcov/error.hpp"
#include "uavcov/mobility.hpp"

namespace uavcov {
namespace {

Scenario road(std::vector<Area> areas, std::vector<AreaEdge> edges, std::vector<int> origins,
              std::vector<int> destinations, int steps, double step_s) {
  auto s = testing::line_scenario(1, {0}, 1, 3, steps);
  s.areas = std::move(areas);
  s.area_graph = {std::move(edges), std::move(origins), std::move(destinations)};
  s.step_duration_s = step_s;
  return s;
}

Area seg(int id, int free_flow, int storage) { return {id, {0.0, 0.0}, 100.0, free_flow, storage}; }

TEST(Routing, SingleEdge) {
  const std::vector<Area> areas{seg(0, 3, 5), seg(1, 3, 5)};
  const auto r = route_vehicles(areas, {{{0, 1}}, {0}, {1}});
  ASSERT_TRUE(r[0]);
  EXPECT_EQ(*r[0], (Route{0, 1}));
}

TEST(Routing, TieGoesToSmallerId) {
  const std::vector<Area> areas{seg(0, 1, 5), seg(1, 2, 5), seg(2, 2, 5), seg(3, 1, 5)};
  const auto r = route_vehicles(areas, {{{0, 2}, {0, 1}, {1, 3}, {2, 3}}, {0}, {3}});
  EXPECT_EQ(*r[0], (Route{0, 1, 3}));
}

TEST(Routing, WeightedDiamond) {
  // via 1: 1 + 3 + 1, via 2: 1 + 2 + 1
  const std::vector<Area> areas{seg(0, 1, 5), seg(1, 3, 5), seg(2, 2, 5), seg(3, 1, 5)};
  const auto r = route_vehicles(areas, {{{0, 1}, {0, 2}, {1, 3}, {2, 3}}, {0}, {3}});
  EXPECT_EQ(*r[0], (Route{0, 2, 3}));
}

TEST(Routing, UnreachableOriginMarked) {
  const std::vector<Area> areas{seg(0, 1, 5), seg(1, 1, 5), seg(2, 1, 5)};
  const auto r = route_vehicles(areas, {{{0, 1}}, {0, 2}, {1}});
  EXPECT_TRUE(r[0]);
  EXPECT_FALSE(r[1]);
  const auto s = road(areas, {{0, 1}}, {0, 2}, {1}, 1, 10);
  EXPECT_THROW(simulate_evacuation(s, MobilityConfig{}), InstanceError);
}

TEST(Evacuation, ThreeVehiclesExitOnePerTick) {
  const auto s = road({seg(0, 2, 10)}, {}, {0}, {0}, 1, 10);
  MobilityConfig cfg;
  cfg.total_vehicles = 3;
  const auto res = simulate_evacuation_traced(s, cfg);
  ASSERT_EQ(res.trace.arrival_tick.size(), 3u);
  EXPECT_EQ(res.trace.arrival_tick, (std::vector<std::int64_t>{2, 3, 4}));
}

TEST(Evacuation, NoVehicles) {
  const auto s = road({seg(0, 2, 10), seg(1, 2, 10)}, {{0, 1}}, {0}, {1}, 4, 10);
  MobilityConfig cfg;
  cfg.total_vehicles = 0;
  const auto n = simulate_evacuation(s, cfg);
  for (int a = 0; a < 2; ++a)
    for (int k = 0; k < 4; ++k) EXPECT_EQ(n.at(a, k), 0);
}

TEST(Evacuation, BlockedDownstreamHoldsUpstream) {
  // The downstream segment fits one vehicle, which stays longer than the run.
  const auto s = road({seg(0, 1, 5), seg(1, 1000000, 1)}, {{0, 1}}, {0}, {1}, 5, 10);
  MobilityConfig cfg;
  cfg.total_vehicles = 3;
  const auto n = simulate_evacuation(s, cfg);
  for (int k = 0; k < 5; ++k) {
    EXPECT_EQ(n.at(0, k), 2);
    EXPECT_EQ(n.at(1, k), 1);
  }
}

TEST(Evacuation, WaitingVehiclesCountAtOrigin) {
  const auto s = road({seg(0, 5, 2), seg(1, 1, 50)}, {{0, 1}}, {0}, {1}, 1, 1);
  MobilityConfig cfg;
  cfg.total_vehicles = 7;
  EXPECT_EQ(simulate_evacuation(s, cfg).at(0, 0), 7);
}

TEST(Evacuation, ConfigValidation) {
  const auto s = road({seg(0, 2, 10)}, {}, {0}, {0}, 1, 10);
  MobilityConfig cfg;
  cfg.tick_s = 3;
  EXPECT_THROW(simulate_evacuation(s, cfg), ConfigError);
  cfg = MobilityConfig{};
  cfg.outflow_per_tick = 0;
  EXPECT_THROW(simulate_evacuation(s, cfg), ConfigError);
  cfg = MobilityConfig{};
  cfg.total_vehicles = -1;
  EXPECT_THROW(simulate_evacuation(s, cfg), ConfigError);
  cfg = MobilityConfig{};
  cfg.origin_weights = {1.0, 2.0};
  EXPECT_THROW(simulate_evacuation(s, cfg), ConfigError);
}

// Conservation, FIFO and the free-flow lower bound on a generated network.
void check_trace(const Scenario& s, const MobilityConfig& cfg, const EvacuationResult& r) {
  for (const auto& t : r.trace.tallies) ASSERT_EQ(t.in_network + t.arrived, cfg.total_vehicles);
  std::map<int, std::vector<const Traversal*>> by_area;
  for (const auto& t : r.trace.traversals) {
    ASSERT_GE(t.exit_tick - t.entry_tick, s.areas[t.area].free_flow_ticks);
    by_area[t.area].push_back(&t);
  }
  for (const auto& [area, list] : by_area)
    for (std::size_t i = 1; i < list.size(); ++i)
      ASSERT_LT(list[i - 1]->entry_seq, list[i]->entry_seq) << "area " << area;
}

TEST(Evacuation, InvariantsOnDeskScenario) {
  for (std::uint64_t seed : {1u, 2u, 3u}) {
    const auto s = generate_scenario(GeneratorConfig::desk(seed));
    MobilityConfig cfg;
    cfg.total_vehicles = 3000;
    cfg.seed = seed;
    cfg.departure_spread_ticks = seed == 3 ? 900 : 0;
    const auto r = simulate_evacuation_traced(s, cfg);
    check_trace(s, cfg, r);
    EXPECT_EQ(r.counts, simulate_evacuation(s, cfg));
  }
}

// Arrival ticks of `before` never beat those of `after` for any vehicle.
void expect_no_earlier(const std::vector<std::int64_t>& before, const std::vector<std::int64_t>& after,
                       const std::string& what) {
  ASSERT_EQ(before.size(), after.size());
  for (std::size_t v = 0; v < before.size(); ++v) {
    if (before[v] < 0) {
      EXPECT_LT(after[v], 0) << what << " vehicle " << v;
      continue;
    }
    if (after[v] >= 0) EXPECT_GE(after[v], before[v]) << what << " vehicle " << v;
  }
}

TEST(Evacuation, SmallerStorageNeverSpeedsArrivalsOnAChain) {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 10; ++trial) {
    std::vector<Area> areas;
    std::vector<AreaEdge> edges;
    for (int a = 0; a < 6; ++a) {
      areas.push_back(seg(a, std::uniform_int_distribution<int>(1, 8)(rng),
                          std::uniform_int_distribution<int>(2, 12)(rng)));
      if (a > 0) edges.push_back({a - 1, a});
    }
    const auto s = road(areas, edges, {0}, {5}, 4, 60);
    MobilityConfig cfg;
    cfg.total_vehicles = 120;
    const auto before = simulate_evacuation_traced(s, cfg).trace.arrival_tick;
    for (int target = 0; target < 6; ++target) {
      auto cut = s;
      cut.areas[target].storage_capacity = std::max(1, cut.areas[target].storage_capacity / 3);
      expect_no_earlier(before, simulate_evacuation_traced(cut, cfg).trace.arrival_tick,
                        "trial " + std::to_string(trial) + " segment " + std::to_string(target));
    }
  }
}

// Where routes merge, holding one stream back upstream can thin the queue at
// the merge and let vehicles through sooner, including some on the cut route.
TEST(Evacuation, StorageCutCanSpeedUpMergingTraffic) {
  auto s = generate_scenario(GeneratorConfig::desk(5));
  MobilityConfig cfg;
  cfg.total_vehicles = 1500;
  const auto before = simulate_evacuation_traced(s, cfg).trace.arrival_tick;
  const int target = route_vehicles(s.areas, s.area_graph).front()->at(1);
  s.areas[target].storage_capacity = std::max(1, s.areas[target].storage_capacity / 4);
  const auto after = simulate_evacuation_traced(s, cfg).trace.arrival_tick;
  ASSERT_EQ(before.size(), after.size());
  int earlier = 0;
  for (std::size_t v = 0; v < before.size(); ++v) earlier += after[v] >= 0 && after[v] < before[v];
  EXPECT_GT(earlier, 0);
}

TEST(Evacuation, Deterministic) {
  const auto s = generate_scenario(GeneratorConfig::desk(9));
  MobilityConfig cfg;
  cfg.total_vehicles = 5000;
  cfg.departure_spread_ticks = 1200;
  cfg.seed = 4;
  EXPECT_EQ(counts_to_csv(simulate_evacuation(s, cfg)), counts_to_csv(simulate_evacuation(s, cfg)));
}

TEST(Counts, CsvRoundTripAndErrors) {
  VehicleCounts n(2, 3);
  n.at(1, 2) = 17;
  n.at(0, 0) = 4;
  EXPECT_EQ(counts_from_csv(counts_to_csv(n)), n);
  EXPECT_THROW(counts_from_csv("area,step,count\n"), InputError);
  EXPECT_THROW(counts_from_csv("area_id,step,count\n0,0,1\n0,1\n"), InputError);
  EXPECT_THROW(counts_from_csv("area_id,step,count\n0,0,-1\n"), InputError);
  EXPECT_THROW(counts_from_csv("area_id,step,count\n0,0,x\n"), InputError);
}

}  // namespace
}  // namespace uavcov
