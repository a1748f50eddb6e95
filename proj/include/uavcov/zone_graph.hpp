#pragma once

#include <optional>
#include <vector>

#include "uavcov/scenario.hpp"

namespace uavcov {

/// Hop-count view of the zone link set L, with link indices matching
/// `Scenario::links`.
class ZoneGraph {
 public:
  static constexpr int kUnreachable = -1;

  explicit ZoneGraph(const Scenario& s);

  int num_zones() const { return static_cast<int>(out_.size()); }
  int num_links() const { return static_cast<int>(links_.size()); }
  const ZoneLink& link(int index) const { return links_[index]; }

  /// Link indices leaving `zone`, ordered by destination zone id.
  const std::vector<int>& outgoing(int zone) const { return out_[zone]; }
  /// Link indices entering `zone`, ordered by source zone id.
  const std::vector<int>& incoming(int zone) const { return in_[zone]; }

  std::optional<int> link_index(int from, int to) const;

  /// Hop distances from every zone to the closest zone of `targets`;
  /// kUnreachable where no path exists.
  std::vector<int> distances_to(const std::vector<int>& targets) const;

  /// Distance to the nearest recharge site, cached at construction.
  int distance_to_site(int zone) const { return site_distance_[zone]; }

  /// Minimum-hop path, lexicographically smallest among ties.
  /// Empty when the zones are disconnected.
  std::vector<int> shortest_path(int from, int to) const;

  /// Next hop on the lexicographically smallest shortest path from `from`
  /// toward the nearest recharge site. Requires distance_to_site(from) > 0.
  int next_hop_to_site(int from) const;

 private:
  std::vector<ZoneLink> links_;
  std::vector<std::vector<int>> out_;
  std::vector<std::vector<int>> in_;
  std::vector<int> site_distance_;
};

}  // namespace uavcov
