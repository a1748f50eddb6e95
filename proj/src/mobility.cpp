#include "uavcov/mobility.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <numeric>
#include <queue>
#include <random>

#include "uavcov/error.hpp"
#include "uavcov/io.hpp"

namespace uavcov {

void MobilityConfig::validate(double step_duration_s) const {
  if (total_vehicles < 0) throw ConfigError("total_vehicles", "must be >= 0");
  if (tick_s < 1) throw ConfigError("tick_s", "must be >= 1");
  if (outflow_per_tick < 1) throw ConfigError("outflow_per_tick", "must be >= 1");
  if (departure_spread_ticks < 0) throw ConfigError("departure_spread_ticks", "must be >= 0");
  double ticks = step_duration_s / tick_s;
  if (std::abs(ticks - std::round(ticks)) > 1e-9 || ticks < 1.0)
    throw ConfigError("tick_s", "must divide step_duration_s");
  for (double w : origin_weights)
    if (!(w >= 0.0) || !std::isfinite(w)) throw ConfigError("origin_weights", "must be >= 0");
}

VehicleCounts::VehicleCounts(int num_areas, int num_steps)
    : num_areas_(num_areas),
      num_steps_(num_steps),
      data_(static_cast<std::size_t>(num_areas) * num_steps, 0) {
  if (num_areas < 0 || num_steps < 0) throw InputError("negative matrix dimension");
}

std::vector<std::optional<Route>> route_vehicles(const std::vector<Area>& areas,
                                                 const AreaGraph& graph) {
  const int n = static_cast<int>(areas.size());
  std::vector<std::vector<int>> succ(n), pred(n);
  for (const auto& e : graph.edges) {
    if (e.from < 0 || e.from >= n || e.to < 0 || e.to >= n)
      throw InputError("area edge references unknown area");
    succ[e.from].push_back(e.to);
    pred[e.to].push_back(e.from);
  }
  for (auto& v : succ) std::sort(v.begin(), v.end());
  std::vector<bool> is_dest(n, false);
  for (int d : graph.destinations) {
    if (d < 0 || d >= n) throw InputError("destination references unknown area");
    is_dest[d] = true;
  }

  // cost[v]: free-flow ticks from entering v until leaving the network at
  // the nearest destination, v's own segment included.
  constexpr auto kInf = std::numeric_limits<std::int64_t>::max();
  std::vector<std::int64_t> cost(n, kInf);
  using Item = std::pair<std::int64_t, int>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
  for (int d = 0; d < n; ++d) {
    if (!is_dest[d]) continue;
    if (areas[d].free_flow_ticks < 1) throw InputError("free-flow time must be positive");
    cost[d] = areas[d].free_flow_ticks;
    heap.push({cost[d], d});
  }
  while (!heap.empty()) {
    auto [c, v] = heap.top();
    heap.pop();
    if (c != cost[v]) continue;
    for (int u : pred[v]) {
      if (is_dest[u]) continue;
      if (areas[u].free_flow_ticks < 1) throw InputError("free-flow time must be positive");
      std::int64_t cand = areas[u].free_flow_ticks + c;
      if (cand < cost[u]) {
        cost[u] = cand;
        heap.push({cand, u});
      }
    }
  }

  std::vector<std::optional<Route>> routes;
  for (int o : graph.origins) {
    if (o < 0 || o >= n) throw InputError("origin references unknown area");
    if (cost[o] == kInf) {
      routes.emplace_back(std::nullopt);
      continue;
    }
    Route path{o};
    int cur = o;
    while (!is_dest[cur]) {
      int best = -1;
      for (int w : succ[cur])  // ascending id, strict < keeps the smallest on ties
        if (cost[w] != kInf && (best < 0 || cost[w] < cost[best])) best = w;
      cur = best;
      path.push_back(cur);
    }
    routes.emplace_back(std::move(path));
  }
  return routes;
}

namespace {

std::vector<std::int64_t> apportion(std::int64_t total, std::size_t n,
                                    const std::vector<double>& weights) {
  std::vector<double> w = weights.empty() ? std::vector<double>(n, 1.0) : weights;
  if (w.size() != n) throw ConfigError("origin_weights", "must have one entry per origin");
  double sum = std::accumulate(w.begin(), w.end(), 0.0);
  if (!(sum > 0.0)) throw ConfigError("origin_weights", "must not all be zero");
  // Largest-remainder apportionment, ties to the lower origin index.
  std::vector<std::int64_t> share(n);
  std::vector<std::pair<double, std::size_t>> rem;
  std::int64_t assigned = 0;
  for (std::size_t i = 0; i < n; ++i) {
    double exact = static_cast<double>(total) * w[i] / sum;
    share[i] = static_cast<std::int64_t>(std::floor(exact));
    assigned += share[i];
    rem.push_back({exact - static_cast<double>(share[i]), i});
  }
  std::stable_sort(rem.begin(), rem.end(), [](auto& a, auto& b) { return a.first > b.first; });
  for (std::size_t i = 0; assigned < total; ++i, ++assigned) ++share[rem[i % n].second];
  return share;
}

struct VehicleState {
  int route = 0;
  int hop = 0;
  std::int64_t entry_tick = 0;
  std::int64_t entry_seq = 0;
  std::int64_t departure_tick = 0;
};

EvacuationResult run(const Scenario& s, const MobilityConfig& cfg, bool traced) {
  cfg.validate(s.step_duration_s);
  const int na = static_cast<int>(s.areas.size());
  const auto& origins = s.area_graph.origins;
  auto routes = route_vehicles(s.areas, s.area_graph);
  for (std::size_t i = 0; i < routes.size(); ++i)
    if (!routes[i])
      throw InstanceError("origin area " + std::to_string(origins[i]) +
                          " has no path to any destination");

  EvacuationResult result;
  result.counts = VehicleCounts(na, s.num_steps);
  const auto ticks_per_step = static_cast<std::int64_t>(std::llround(s.step_duration_s / cfg.tick_s));
  const std::int64_t total_ticks = ticks_per_step * s.num_steps;

  std::vector<VehicleState> vehicles;
  vehicles.reserve(static_cast<std::size_t>(cfg.total_vehicles));
  std::vector<std::deque<std::int64_t>> waiting(origins.size());
  if (cfg.total_vehicles > 0) {
    if (origins.empty()) throw InstanceError("area graph has no origin");
    auto share = apportion(cfg.total_vehicles, origins.size(), cfg.origin_weights);
    std::mt19937_64 rng(cfg.seed);
    for (std::size_t o = 0; o < origins.size(); ++o) {
      std::vector<std::int64_t> ids;
      for (std::int64_t i = 0; i < share[o]; ++i) {
        VehicleState v;
        v.route = static_cast<int>(o);
        if (cfg.departure_spread_ticks > 0)
          v.departure_tick = std::uniform_int_distribution<std::int64_t>(
              0, cfg.departure_spread_ticks - 1)(rng);
        ids.push_back(static_cast<std::int64_t>(vehicles.size()));
        vehicles.push_back(v);
      }
      std::stable_sort(ids.begin(), ids.end(), [&](auto a, auto b) {
        return vehicles[a].departure_tick < vehicles[b].departure_tick;
      });
      waiting[o].assign(ids.begin(), ids.end());
    }
  }

  std::vector<std::deque<std::int64_t>> queue(na);
  std::vector<std::int64_t> seq_counter(na, 0);
  std::vector<std::int64_t> waiting_at(na, 0);  // by area id
  for (std::size_t o = 0; o < origins.size(); ++o)
    waiting_at[origins[o]] += static_cast<std::int64_t>(waiting[o].size());
  std::int64_t in_network = cfg.total_vehicles;
  std::int64_t arrived = 0;
  if (traced) {
    result.trace.arrival_tick.assign(vehicles.size(), -1);
    result.trace.tallies.reserve(static_cast<std::size_t>(total_ticks));
  }

  auto enter = [&](std::int64_t vid, int area, std::int64_t tick) {
    auto& v = vehicles[vid];
    v.entry_tick = tick;
    v.entry_seq = seq_counter[area]++;
    queue[area].push_back(vid);
  };

  for (std::int64_t tick = 0; tick < total_ticks; ++tick) {
    // Exits, segment by segment in id order.
    for (int a = 0; a < na; ++a) {
      int budget = cfg.outflow_per_tick;
      auto& q = queue[a];
      while (budget > 0 && !q.empty()) {
        auto vid = q.front();
        auto& v = vehicles[vid];
        if (tick < v.entry_tick + s.areas[a].free_flow_ticks) break;
        const Route& route = *routes[v.route];
        const bool last = v.hop + 1 == static_cast<int>(route.size());
        int next = last ? -1 : route[v.hop + 1];
        if (!last && static_cast<int>(queue[next].size()) >= s.areas[next].storage_capacity) break;
        q.pop_front();
        --budget;
        if (traced)
          result.trace.traversals.push_back({vid, a, v.entry_tick, tick, v.entry_seq});
        if (last) {
          --in_network;
          ++arrived;
          if (traced) result.trace.arrival_tick[vid] = tick;
        } else {
          ++v.hop;
          enter(vid, next, tick);
        }
      }
    }
    // Admissions from the departure buffers.
    for (std::size_t o = 0; o < origins.size(); ++o) {
      int area = origins[o];
      auto& w = waiting[o];
      while (!w.empty() && vehicles[w.front()].departure_tick <= tick &&
             static_cast<int>(queue[area].size()) < s.areas[area].storage_capacity) {
        enter(w.front(), area, tick);
        w.pop_front();
        --waiting_at[area];
      }
    }
    if (traced) result.trace.tallies.push_back({in_network, arrived});
    if ((tick + 1) % ticks_per_step == 0) {
      int k = static_cast<int>(tick / ticks_per_step);
      for (int a = 0; a < na; ++a)
        result.counts.at(a, k) = static_cast<std::int64_t>(queue[a].size()) + waiting_at[a];
    }
  }
  return result;
}

}  // namespace

VehicleCounts simulate_evacuation(const Scenario& s, const MobilityConfig& cfg) {
  return run(s, cfg, false).counts;
}

EvacuationResult simulate_evacuation_traced(const Scenario& s, const MobilityConfig& cfg) {
  return run(s, cfg, true);
}

std::string counts_to_csv(const VehicleCounts& n) {
  std::string out = "area_id,step,count\n";
  for (int a = 0; a < n.num_areas(); ++a)
    for (int k = 0; k < n.num_steps(); ++k)
      out += std::to_string(a) + "," + std::to_string(k) + "," + std::to_string(n.at(a, k)) + "\n";
  return out;
}

VehicleCounts counts_from_csv(const std::string& text) {
  auto rows = io::parse_csv(text, "area_id,step,count");
  long long max_a = -1, max_k = -1;
  for (const auto& r : rows) {
    max_a = std::max(max_a, io::parse_int(r[0]));
    max_k = std::max(max_k, io::parse_int(r[1]));
  }
  VehicleCounts n(static_cast<int>(max_a + 1), static_cast<int>(max_k + 1));
  if (rows.size() != static_cast<std::size_t>((max_a + 1) * (max_k + 1)))
    throw InputError("counts CSV must list every (area, step) pair exactly once");
  std::vector<bool> seen(rows.size(), false);
  for (const auto& r : rows) {
    long long a = io::parse_int(r[0]), k = io::parse_int(r[1]), c = io::parse_int(r[2]);
    if (a < 0 || k < 0 || c < 0) throw InputError("negative value in counts CSV");
    auto flat = static_cast<std::size_t>(a * (max_k + 1) + k);
    if (seen[flat]) throw InputError("duplicate (area, step) pair in counts CSV");
    seen[flat] = true;
    n.at(static_cast<int>(a), static_cast<int>(k)) = c;
  }
  return n;
}

}  // namespace uavcov
