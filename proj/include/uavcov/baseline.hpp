#pragma once

#include <vector>

#include "uavcov/linkbudget.hpp"
#include "uavcov/plan.hpp"
#include "uavcov/scenario.hpp"

namespace uavcov {

/// Least-recently-visited patrol. Each UAV picks the zone it covered least
/// recently (never-visited first, ties to the lowest id) as its waypoint and
/// walks the shortest path there, covering every zone for one step on the
/// way. When one more step would leave too little battery to reach a
/// recharge site it heads for the nearest one and recharges on arrival.
/// Throws InstanceError if some zone cannot reach any recharge site.
Plan baseline_plan(const Scenario& s);

/// Every covering UAV splits its spectrum evenly over the areas it can
/// serve, and UAVs covering the same zone share that zone's spectrum evenly.
AllocationMatrix uniform_allocation(const Plan& p, const Scenario& s, const ThroughputMatrix& t);

/// Minimum-hop zone path, lexicographically smallest among ties.
/// Throws InstanceError when the zones are disconnected.
std::vector<int> shortest_zone_path(const Scenario& s, int from, int to);

}  // namespace uavcov
