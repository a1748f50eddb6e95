#include "uavcov/zone_graph.hpp"

#include <algorithm>
#include <deque>

#include "uavcov/error.hpp"

namespace uavcov {

ZoneGraph::ZoneGraph(const Scenario& s)
    : links_(s.links), out_(s.zones.size()), in_(s.zones.size()) {
  const int nz = static_cast<int>(s.zones.size());
  for (int i = 0; i < static_cast<int>(links_.size()); ++i) {
    const auto& l = links_[i];
    if (l.from < 0 || l.from >= nz || l.to < 0 || l.to >= nz)
      throw InputError("link references unknown zone");
    out_[l.from].push_back(i);
    in_[l.to].push_back(i);
  }
  for (auto& v : out_)
    std::sort(v.begin(), v.end(), [&](int a, int b) { return links_[a].to < links_[b].to; });
  for (auto& v : in_)
    std::sort(v.begin(), v.end(), [&](int a, int b) { return links_[a].from < links_[b].from; });
  site_distance_ = distances_to(s.recharge_sites);
}

std::optional<int> ZoneGraph::link_index(int from, int to) const {
  if (from < 0 || from >= num_zones()) return std::nullopt;
  for (int li : out_[from])
    if (links_[li].to == to) return li;
  return std::nullopt;
}

std::vector<int> ZoneGraph::distances_to(const std::vector<int>& targets) const {
  std::vector<int> dist(out_.size(), kUnreachable);
  std::deque<int> frontier;
  for (int t : targets) {
    if (t < 0 || t >= num_zones() || dist[t] == 0) continue;
    dist[t] = 0;
    frontier.push_back(t);
  }
  // Walk links backwards: dist[z] is the hop count from z to the target set.
  while (!frontier.empty()) {
    int z = frontier.front();
    frontier.pop_front();
    for (int li : in_[z]) {
      int prev = links_[li].from;
      if (dist[prev] == kUnreachable) {
        dist[prev] = dist[z] + 1;
        frontier.push_back(prev);
      }
    }
  }
  return dist;
}

std::vector<int> ZoneGraph::shortest_path(int from, int to) const {
  if (from < 0 || from >= num_zones() || to < 0 || to >= num_zones())
    throw InputError("shortest_path: unknown zone");
  const auto dist = distances_to({to});
  if (dist[from] == kUnreachable) return {};
  std::vector<int> path{from};
  int cur = from;
  while (cur != to) {
    // outgoing() is sorted by destination id, so the first qualifying hop
    // yields the lexicographically smallest sequence.
    for (int li : out_[cur]) {
      int next = links_[li].to;
      if (dist[next] == dist[cur] - 1) {
        cur = next;
        break;
      }
    }
    path.push_back(cur);
  }
  return path;
}

int ZoneGraph::next_hop_to_site(int from) const {
  const int d = site_distance_[from];
  if (d <= 0) throw InstanceError("next_hop_to_site: zone is a site or cut off");
  for (int li : out_[from]) {
    int next = links_[li].to;
    if (site_distance_[next] == d - 1) return next;
  }
  throw InstanceError("next_hop_to_site: inconsistent distances");
}

}  // namespace uavcov
