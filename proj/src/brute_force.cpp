#include <algorithm>
#include <cstdint>
#include <optional>
#include <unordered_map>

#include "uavcov/error.hpp"
#include "uavcov/optimizer.hpp"
#include "uavcov/zone_graph.hpp"

namespace uavcov {

namespace {

using Mask = std::uint32_t;
constexpr int kMaxBits = 26;

// Every feasible action sequence of one UAV, keyed by the (step, zone) cells
// it covers. The first sequence found for a mask is its representative.
struct UavPatterns {
  std::uint64_t sequences = 0;
  std::vector<Mask> masks;  // in discovery order
  std::unordered_map<Mask, std::vector<Action>> representative;
};

UavPatterns enumerate(const Scenario& s, const ZoneGraph& g, int d) {
  const int K = s.num_steps, Z = static_cast<int>(s.zones.size());
  const int battery = s.uavs[d].battery_steps;
  UavPatterns out;
  std::vector<Action> seq;
  auto dfs = [&](auto& self, int k, int pos, int used, Mask mask) -> void {
    if (k == K) {
      ++out.sequences;
      if (out.representative.try_emplace(mask, seq).second) out.masks.push_back(mask);
      return;
    }
    auto step = [&](const Action& a, int next_used, Mask m) {
      seq.push_back(a);
      self(self, k + 1, a.end_zone(), next_used, m);
      seq.pop_back();
    };
    if (used + 1 <= battery) step(Action::cover(pos), used + 1, mask | Mask{1} << (k * Z + pos));
    if (s.is_recharge_site(pos)) step(Action::recharge(pos), 0, mask);
    if (used + 1 <= battery)
      for (int li : g.outgoing(pos)) step(Action::travel(pos, g.link(li).to), used + 1, mask);
  };
  dfs(dfs, 0, s.uavs[d].home_zone, 0, 0);
  return out;
}

// Calls f(joint mask, per-UAV pattern indices) for every combination, in
// lexicographic order of the indices.
template <class F>
void for_each_combination(const std::vector<UavPatterns>& per_uav, F&& f) {
  const std::size_t D = per_uav.size();
  std::vector<std::size_t> idx(D, 0);
  for (const auto& u : per_uav)
    if (u.masks.empty()) return;
  while (true) {
    Mask joint = 0;
    for (std::size_t d = 0; d < D; ++d) joint |= per_uav[d].masks[idx[d]];
    f(joint, idx);
    std::size_t d = D;
    while (d > 0) {
      --d;
      if (++idx[d] < per_uav[d].masks.size()) break;
      idx[d] = 0;
      if (d == 0) return;
    }
    if (D == 0) return;
  }
}

}  // namespace

BruteForceResult brute_force_optimum(const Scenario& s, const ThroughputMatrix& t,
                                     const VehicleCounts& n, const PlanningOptions& options,
                                     const BruteForceLimits& limits) {
  const int D = static_cast<int>(s.uavs.size()), K = s.num_steps;
  const int Z = static_cast<int>(s.zones.size());
  if (D > limits.max_uavs || Z > limits.max_zones || K > limits.max_steps)
    throw LimitError("instance too large for enumeration: " + std::to_string(D) + " uavs, " +
                     std::to_string(Z) + " zones, " + std::to_string(K) + " steps (limits " +
                     std::to_string(limits.max_uavs) + ", " + std::to_string(limits.max_zones) +
                     ", " + std::to_string(limits.max_steps) + ")");
  const int bits = Z * K;
  if (bits > kMaxBits) throw LimitError("zones x steps exceeds " + std::to_string(kMaxBits));
  const ZoneGraph graph(s);

  std::vector<UavPatterns> per_uav;
  BruteForceResult result;
  result.joint_plans = 1;
  for (int d = 0; d < D; ++d) {
    per_uav.push_back(enumerate(s, graph, d));
    result.joint_plans *= per_uav.back().sequences;
  }
  if (result.joint_plans == 0) throw InstanceError("no feasible plan exists");

  const std::size_t size = std::size_t{1} << bits;
  std::vector<std::uint8_t> present(size, 0);
  for_each_combination(per_uav, [&](Mask m, const auto&) { present[m] = 1; });
  result.coverage_patterns =
      static_cast<std::uint64_t>(std::count(present.begin(), present.end(), std::uint8_t{1}));

  // up[m]: some present pattern contains m. m is undominated when present
  // and no one-bit extension of it is contained in a present pattern.
  std::vector<std::uint8_t> up(present);
  for (int b = 0; b < bits; ++b)
    for (std::size_t m = 0; m < size; ++m)
      if (!(m >> b & 1) && up[m | std::size_t{1} << b]) up[m] = 1;
  std::unordered_map<Mask, std::optional<Plan>> maximal;
  std::vector<Mask> order;
  for (std::size_t m = 0; m < size; ++m) {
    if (!present[m]) continue;
    bool dominated = false;
    for (int b = 0; b < bits && !dominated; ++b)
      dominated = !(m >> b & 1) && up[m | std::size_t{1} << b];
    if (!dominated) order.push_back(static_cast<Mask>(m));
  }
  for (Mask m : order) maximal.emplace(m, std::nullopt);
  for_each_combination(per_uav, [&](Mask m, const std::vector<std::size_t>& idx) {
    auto it = maximal.find(m);
    if (it == maximal.end() || it->second) return;
    Plan p(D, K);
    for (int d = 0; d < D; ++d) {
      const auto& seq = per_uav[d].representative.at(per_uav[d].masks[idx[d]]);
      for (int k = 0; k < K; ++k) p.at(d, k) = seq[k];
    }
    it->second = std::move(p);
  });

  bool have = false;
  for (Mask m : order) {
    const Plan& p = *maximal.at(m);
    auto alloc = allocate_spectrum(p, s, t, n, options);
    ++result.allocations_solved;
    if (!have || alloc.objective > result.allocation.objective) {
      have = true;
      result.plan = p;
      result.allocation = std::move(alloc);
    }
  }
  return result;
}

}  // namespace uavcov
