#include "uavcov/error.hpp"
#include "uavcov/optimizer.hpp"
#include "uavcov/zone_graph.hpp"

namespace uavcov {

namespace {

constexpr double kTieEps = 1e-9;

struct Candidate {
  Action action;
  double value;
};

}  // namespace

Plan round_solution(const FractionalSolution& f, const Scenario& s) {
  const int D = static_cast<int>(s.uavs.size());
  const int K = s.num_steps;
  if (f.num_uavs != D || f.num_steps != K || f.num_zones != static_cast<int>(s.zones.size()) ||
      f.links != s.links || f.recharge_sites != s.recharge_sites)
    throw InputError("fractional solution does not match the scenario");
  const ZoneGraph graph(s);
  Plan plan(D, K);

  std::vector<int> pos(D), used(D, 0);
  for (int d = 0; d < D; ++d) pos[d] = s.uavs[d].home_zone;

  // A non-recharge action ending at `zone` is safe if the UAV can still get
  // from there to a recharge site within its battery window.
  auto safe = [&](int d, int zone) {
    const int dist = graph.distance_to_site(zone);
    const int after = used[d] + 1;
    return dist != ZoneGraph::kUnreachable && after + dist <= s.uavs[d].battery_steps;
  };

  std::vector<Candidate> cands;
  for (int k = 0; k < K; ++k) {
    for (int d = 0; d < D; ++d) {
      const int z = pos[d];
      cands.clear();
      // Ordered by tie priority so a strict improvement is needed to switch.
      if (safe(d, z)) cands.push_back({Action::cover(z), f.cover_value(d, k, z)});
      if (s.is_recharge_site(z)) cands.push_back({Action::recharge(z), f.recharge_value(d, k, z)});
      for (int li : graph.outgoing(z)) {
        const int to = graph.link(li).to;
        if (safe(d, to)) cands.push_back({Action::travel(z, to), f.travel_value(d, k, li)});
      }
      if (cands.empty())
        throw RoundingError(d, k,
                            "no battery-safe action from zone " + std::to_string(z) + " after " +
                                std::to_string(used[d]) + " steps without recharge");
      const Candidate* best = &cands.front();
      for (const auto& c : cands)
        if (c.value > best->value + kTieEps) best = &c;
      plan.at(d, k) = best->action;
      pos[d] = best->action.end_zone();
      used[d] = best->action.type == ActionType::Recharge ? 0 : used[d] + 1;
    }
  }
  return plan;
}

}  // namespace uavcov
