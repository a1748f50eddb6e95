#pragma once

#include <algorithm>
#include <random>

#include "uavcov/linkbudget.hpp"
#include "uavcov/mobility.hpp"
#include "uavcov/scenario.hpp"

namespace uavcov::testing {

struct Instance {
  Scenario s;
  ThroughputMatrix t;
  VehicleCounts n;
};

// Zones 800 m apart on a line with two-way links between neighbours, and a
// chain of areas from area 0 (origin) to the last one (destination).
inline Scenario line_scenario(int zones, std::vector<int> sites, int uavs, int battery, int steps,
                              int areas = 1) {
  Scenario s;
  for (int z = 0; z < zones; ++z) s.zones.push_back({z, {800.0 * z, 0.0}});
  for (int z = 0; z + 1 < zones; ++z) {
    s.links.push_back({z, z + 1});
    s.links.push_back({z + 1, z});
  }
  std::sort(s.links.begin(), s.links.end());
  std::sort(sites.begin(), sites.end());
  s.recharge_sites = sites;
  for (int d = 0; d < uavs; ++d) s.uavs.push_back({d, battery, sites[d % sites.size()]});
  for (int a = 0; a < areas; ++a) s.areas.push_back({a, {100.0 * a, 50.0}, 300.0, 22, 40});
  for (int a = 0; a + 1 < areas; ++a) s.area_graph.edges.push_back({a, a + 1});
  s.area_graph.origins = {0};
  s.area_graph.destinations = {areas - 1};
  s.num_steps = steps;
  s.step_duration_s = 600.0;
  s.link_range_m = 1000.0;
  return s;
}

// Random instance inside the brute-force limits: <= 2 UAVs, <= 4 zones on a
// line, <= 6 steps, <= 4 areas, sparse T and N with at least one vehicle.
inline Instance tiny_instance(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  auto pick = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
  const int zones = pick(1, 4), uavs = pick(1, 2), steps = pick(3, 6), areas = pick(1, 4);
  std::vector<int> sites{0};
  if (zones > 2 && pick(0, 1)) sites.push_back(zones - 1);
  Instance in{line_scenario(zones, sites, uavs, pick(1, 3), steps, areas), {}, {}};
  in.t = ThroughputMatrix(areas, zones);
  for (int a = 0; a < areas; ++a) {
    in.t.at(a, pick(0, zones - 1)) = 1e6 * pick(1, 10);
    for (int z = 0; z < zones; ++z)
      if (pick(0, 2) == 0) in.t.at(a, z) = 1e6 * pick(1, 10);
  }
  in.n = VehicleCounts(areas, steps);
  for (int a = 0; a < areas; ++a)
    for (int k = 0; k < steps; ++k) in.n.at(a, k) = pick(0, 3) == 0 ? 0 : pick(1, 5);
  in.n.at(0, 0) = std::max<std::int64_t>(in.n.at(0, 0), 1);
  return in;
}

inline Instance desk_instance(std::uint64_t seed) {
  Instance in;
  in.s = generate_scenario(GeneratorConfig::desk(seed));
  in.t = build_throughput_matrix(in.s, RadioConfig{}, RateTable::default_table());
  MobilityConfig mob;
  mob.seed = seed;
  in.n = simulate_evacuation(in.s, mob);
  return in;
}

}  // namespace uavcov::testing
