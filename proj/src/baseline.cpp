#include "uavcov/baseline.hpp"

#include <algorithm>
#include <map>

#include "uavcov/error.hpp"
#include "uavcov/zone_graph.hpp"

namespace uavcov {

namespace {

struct Patrol {
  int pos = 0;
  int since_recharge = 0;
  bool need_cover = true;
  bool diverting = false;
  int waypoint = 0;
  std::vector<int> last_visit;
};

int least_recent(const Patrol& u, const std::vector<int>& reachable) {
  int best = reachable.front();
  for (int z : reachable)
    if (u.last_visit[z] < u.last_visit[best]) best = z;
  return best;
}

}  // namespace

std::vector<int> shortest_zone_path(const Scenario& s, int from, int to) {
  const ZoneGraph g(s);
  if (from < 0 || from >= g.num_zones() || to < 0 || to >= g.num_zones())
    throw InputError("unknown zone in path query");
  auto path = g.shortest_path(from, to);
  if (path.empty())
    throw InstanceError("no path from zone " + std::to_string(from) + " to zone " +
                        std::to_string(to));
  return path;
}

Plan baseline_plan(const Scenario& s) {
  const ZoneGraph g(s);
  const int D = static_cast<int>(s.uavs.size()), K = s.num_steps, Z = g.num_zones();
  for (int z = 0; z < Z; ++z)
    if (g.distance_to_site(z) == ZoneGraph::kUnreachable)
      throw InstanceError("zone " + std::to_string(z) + " cannot reach any recharge site");

  std::vector<Patrol> uavs(D);
  std::vector<std::vector<int>> reachable(D);
  for (int d = 0; d < D; ++d) {
    auto& u = uavs[d];
    u.pos = s.uavs[d].home_zone;
    if (u.pos < 0 || u.pos >= Z || !s.is_recharge_site(u.pos))
      throw InstanceError("uav " + std::to_string(d) + " does not start at a recharge site");
    u.last_visit.assign(Z, -1);
    for (int z = 0; z < Z; ++z)
      if (!g.shortest_path(u.pos, z).empty()) reachable[d].push_back(z);
    u.waypoint = least_recent(u, reachable[d]);
  }

  std::map<std::pair<int, int>, std::vector<int>> paths;
  auto next_hop = [&](int from, int to) {
    auto it = paths.find({from, to});
    if (it == paths.end()) it = paths.emplace(std::pair{from, to}, g.shortest_path(from, to)).first;
    return it->second.at(1);
  };

  Plan plan(D, K);
  for (int k = 0; k < K; ++k) {
    for (int d = 0; d < D; ++d) {
      auto& u = uavs[d];
      const int battery = s.uavs[d].battery_steps;
      Action act = u.need_cover ? Action::cover(u.pos)
                                : Action::travel(u.pos, next_hop(u.pos, u.waypoint));
      const int left = battery - u.since_recharge - 1;
      if (left < g.distance_to_site(act.end_zone())) {
        u.diverting = true;
        act = s.is_recharge_site(u.pos) ? Action::recharge(u.pos)
                                        : Action::travel(u.pos, g.next_hop_to_site(u.pos));
      }
      plan.at(d, k) = act;

      switch (act.type) {
        case ActionType::Cover:
          u.last_visit[u.pos] = k;
          ++u.since_recharge;
          u.need_cover = false;
          if (u.pos == u.waypoint) {
            u.waypoint = least_recent(u, reachable[d]);
            u.need_cover = u.waypoint == u.pos;
          }
          break;
        case ActionType::Travel:
          u.pos = act.to;
          ++u.since_recharge;
          u.need_cover = true;
          break;
        case ActionType::Recharge:
          u.since_recharge = 0;
          u.need_cover = true;
          if (u.diverting) {
            // Give up on the waypoint that forced the detour so the next trip
            // tries a different one.
            u.last_visit[u.waypoint] = k;
            u.waypoint = least_recent(u, reachable[d]);
            u.diverting = false;
          }
          break;
        case ActionType::Unassigned:
          break;
      }
    }
  }
  return plan;
}

AllocationMatrix uniform_allocation(const Plan& p, const Scenario& s, const ThroughputMatrix& t) {
  const int Z = static_cast<int>(s.zones.size()), A = static_cast<int>(s.areas.size());
  if (t.num_areas() != A || t.num_zones() != Z)
    throw InputError("throughput matrix does not match the scenario");
  if (p.num_uavs() != static_cast<int>(s.uavs.size()) || p.num_steps() != s.num_steps)
    throw InputError("plan does not match the scenario");
  std::vector<std::vector<int>> served(Z);
  for (int z = 0; z < Z; ++z)
    for (int a = 0; a < A; ++a)
      if (t.at(a, z) > 0.0) served[z].push_back(a);

  AllocationMatrix m;
  std::vector<int> covering(Z);
  for (int k = 0; k < p.num_steps(); ++k) {
    std::fill(covering.begin(), covering.end(), 0);
    for (int d = 0; d < p.num_uavs(); ++d)
      if (const auto& a = p.at(d, k); a.type == ActionType::Cover) {
        if (a.zone < 0 || a.zone >= Z) throw InputError("plan covers an unknown zone");
        ++covering[a.zone];
      }
    for (int d = 0; d < p.num_uavs(); ++d) {
      const auto& a = p.at(d, k);
      if (a.type != ActionType::Cover || served[a.zone].empty()) continue;
      const double share =
          1.0 / (static_cast<double>(served[a.zone].size()) * covering[a.zone]);
      for (int area : served[a.zone]) m.entries.push_back({area, d, k, a.zone, share});
    }
  }
  m.normalize();
  return m;
}

}  // namespace uavcov
