#include "uavcov/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <set>

#include <json.hpp>

#include "uavcov/error.hpp"
#include "uavcov/io.hpp"
#include "uavcov/linkbudget.hpp"
#include "uavcov/zone_graph.hpp"

namespace uavcov {

using nlohmann::json;

double distance(Point2 a, Point2 b) { return std::hypot(a.x - b.x, a.y - b.y); }

bool Scenario::is_recharge_site(int zone) const {
  return std::binary_search(recharge_sites.begin(), recharge_sites.end(), zone);
}

GeneratorConfig GeneratorConfig::desk(std::uint64_t seed) {
  GeneratorConfig c;
  c.zone_rows = 5;
  c.zone_cols = 5;
  c.num_areas = 40;
  c.num_uavs = 4;
  c.num_recharge_sites = 2;
  c.battery_steps = 6;
  c.num_steps = 30;
  c.seed = seed;
  return c;
}

void GeneratorConfig::validate() const {
  if (zone_rows < 1) throw ConfigError("zone_rows", "must be >= 1");
  if (zone_cols < 1) throw ConfigError("zone_cols", "must be >= 1");
  if (num_areas < 1) throw ConfigError("num_areas", "must be >= 1");
  if (num_uavs < 1) throw ConfigError("num_uavs", "must be >= 1");
  if (num_recharge_sites < 1) throw ConfigError("num_recharge_sites", "must be >= 1");
  if (num_recharge_sites > zone_rows * zone_cols)
    throw ConfigError("num_recharge_sites", "must not exceed the zone count");
  if (battery_steps < 1) throw ConfigError("battery_steps", "must be >= 1");
  if (num_steps < 1) throw ConfigError("num_steps", "must be >= 1");
  if (!(step_duration_s > 0.0) || !std::isfinite(step_duration_s))
    throw ConfigError("step_duration_s", "must be a positive number");
  if (!(link_range_m > 0.0) || !std::isfinite(link_range_m))
    throw ConfigError("link_range_m", "must be a positive number");
}

namespace {

// Grid spacing as a fraction of the link range: 4-neighbours are linked,
// diagonals (0.8 * sqrt 2 > 1) are not.
constexpr double kGridSpacingFraction = 0.8;
constexpr double kOriginFraction = 0.2;
constexpr double kDestinationFraction = 0.1;
constexpr double kFreeFlowSpeedMps = 13.89;  // 50 km/h
constexpr double kVehicleSpacingM = 7.5;
constexpr double kMinSegmentM = 150.0;
constexpr double kMaxSegmentM = 600.0;

// Farthest-point sampling seeded at the zone nearest the grid centroid.
std::vector<int> spread_sites(const std::vector<Zone>& zones, int count) {
  Point2 centroid;
  for (const auto& z : zones) {
    centroid.x += z.position.x;
    centroid.y += z.position.y;
  }
  centroid.x /= static_cast<double>(zones.size());
  centroid.y /= static_cast<double>(zones.size());

  std::vector<int> chosen;
  std::vector<double> nearest(zones.size(), std::numeric_limits<double>::infinity());
  int first = 0;
  double best = std::numeric_limits<double>::infinity();
  for (const auto& z : zones) {
    double d = distance(z.position, centroid);
    if (d < best - 1e-9) {
      best = d;
      first = z.id;
    }
  }
  chosen.push_back(first);
  while (static_cast<int>(chosen.size()) < count) {
    for (const auto& z : zones)
      nearest[z.id] = std::min(nearest[z.id], distance(z.position, zones[chosen.back()].position));
    int pick = -1;
    double far = -1.0;
    for (const auto& z : zones) {
      if (nearest[z.id] > far + 1e-9) {
        far = nearest[z.id];
        pick = z.id;
      }
    }
    chosen.push_back(pick);
  }
  return chosen;
}

// Road network: Euclidean minimum spanning tree (guarantees connectivity)
// plus each area's two nearest neighbours; every road is two-way.
std::vector<AreaEdge> build_road_edges(const std::vector<Area>& areas) {
  const int n = static_cast<int>(areas.size());
  std::set<AreaEdge> edges;
  auto add_road = [&](int a, int b) {
    edges.insert({a, b});
    edges.insert({b, a});
  };
  if (n >= 2) {
    std::vector<double> key(n, std::numeric_limits<double>::infinity());
    std::vector<int> parent(n, -1);
    std::vector<bool> in_tree(n, false);
    key[0] = 0.0;
    for (int iter = 0; iter < n; ++iter) {
      int u = -1;
      for (int v = 0; v < n; ++v)
        if (!in_tree[v] && (u < 0 || key[v] < key[u])) u = v;
      in_tree[u] = true;
      if (parent[u] >= 0) add_road(parent[u], u);
      for (int v = 0; v < n; ++v) {
        double d = distance(areas[u].position, areas[v].position);
        if (!in_tree[v] && d < key[v]) {
          key[v] = d;
          parent[v] = u;
        }
      }
    }
    for (int u = 0; u < n; ++u) {
      std::vector<int> order(n);
      std::iota(order.begin(), order.end(), 0);
      std::sort(order.begin(), order.end(), [&](int a, int b) {
        double da = distance(areas[u].position, areas[a].position);
        double db = distance(areas[u].position, areas[b].position);
        return da != db ? da < db : a < b;
      });
      int added = 0;
      for (int v : order) {
        if (v == u) continue;
        add_road(u, v);
        if (++added == 2) break;
      }
    }
  }
  return {edges.begin(), edges.end()};
}

}  // namespace

Scenario generate_scenario(const GeneratorConfig& config) {
  config.validate();
  std::mt19937_64 rng(config.seed);
  Scenario s;
  s.num_steps = config.num_steps;
  s.step_duration_s = config.step_duration_s;
  s.link_range_m = config.link_range_m;

  const double spacing = kGridSpacingFraction * config.link_range_m;
  for (int r = 0; r < config.zone_rows; ++r)
    for (int c = 0; c < config.zone_cols; ++c)
      s.zones.push_back({r * config.zone_cols + c, {c * spacing, r * spacing}});

  for (const auto& a : s.zones)
    for (const auto& b : s.zones)
      if (a.id != b.id && distance(a.position, b.position) <= config.link_range_m)
        s.links.push_back({a.id, b.id});
  std::sort(s.links.begin(), s.links.end());

  const auto sites = spread_sites(s.zones, config.num_recharge_sites);
  s.recharge_sites = sites;
  std::sort(s.recharge_sites.begin(), s.recharge_sites.end());
  for (int d = 0; d < config.num_uavs; ++d)
    s.uavs.push_back({d, config.battery_steps, sites[d % sites.size()]});

  // Areas scatter over the zone footprint, padded by half a grid cell.
  const double width = std::max(1, config.zone_cols - 1) * spacing;
  const double height = std::max(1, config.zone_rows - 1) * spacing;
  std::uniform_real_distribution<double> ux(-spacing / 2, width + spacing / 2);
  std::uniform_real_distribution<double> uy(-spacing / 2, height + spacing / 2);
  std::uniform_real_distribution<double> ulen(kMinSegmentM, kMaxSegmentM);
  for (int i = 0; i < config.num_areas; ++i) {
    Area a;
    a.id = i;
    a.position = {ux(rng), uy(rng)};
    a.length_m = ulen(rng);
    a.free_flow_ticks = std::max(1, static_cast<int>(std::ceil(a.length_m / kFreeFlowSpeedMps)));
    a.storage_capacity = std::max(1, static_cast<int>(std::floor(a.length_m / kVehicleSpacingM)));
    s.areas.push_back(a);
  }
  s.area_graph.edges = build_road_edges(s.areas);

  // Flooded low ground to the west, safe ground to the east.
  std::vector<int> by_x(config.num_areas);
  std::iota(by_x.begin(), by_x.end(), 0);
  std::sort(by_x.begin(), by_x.end(), [&](int a, int b) {
    double xa = s.areas[a].position.x, xb = s.areas[b].position.x;
    return xa != xb ? xa < xb : a < b;
  });
  const int n = config.num_areas;
  if (n == 1) {
    s.area_graph.origins = {0};
    s.area_graph.destinations = {0};
  } else {
    int n_orig = std::clamp(static_cast<int>(std::lround(kOriginFraction * n)), 1, n - 1);
    int n_dest = std::clamp(static_cast<int>(std::lround(kDestinationFraction * n)), 1, n - n_orig);
    s.area_graph.origins.assign(by_x.begin(), by_x.begin() + n_orig);
    s.area_graph.destinations.assign(by_x.end() - n_dest, by_x.end());
    std::sort(s.area_graph.origins.begin(), s.area_graph.origins.end());
    std::sort(s.area_graph.destinations.begin(), s.area_graph.destinations.end());
  }
  return s;
}

ValidationReport validate_scenario(const Scenario& s, const ThroughputMatrix* throughput) {
  ValidationReport report;
  auto violate = [&](std::string msg) { report.violations.push_back(std::move(msg)); };
  const int nz = static_cast<int>(s.zones.size());
  const int na = static_cast<int>(s.areas.size());

  if (nz == 0) violate("scenario has no zones");
  if (na == 0) violate("scenario has no areas");
  for (int i = 0; i < nz; ++i) {
    const auto& z = s.zones[i];
    if (z.id != i) violate("zone ids must be dense from 0: position " + std::to_string(i) +
                           " has id " + std::to_string(z.id));
    if (!std::isfinite(z.position.x) || !std::isfinite(z.position.y))
      violate("zone " + std::to_string(z.id) + " has non-finite coordinates");
  }
  for (int i = 0; i < na; ++i) {
    const auto& a = s.areas[i];
    const auto tag = "area " + std::to_string(a.id);
    if (a.id != i) violate("area ids must be dense from 0: position " + std::to_string(i) +
                           " has id " + std::to_string(a.id));
    if (!std::isfinite(a.position.x) || !std::isfinite(a.position.y))
      violate(tag + " has non-finite coordinates");
    if (a.storage_capacity < 1) violate(tag + " has storage capacity < 1");
    if (a.free_flow_ticks < 1) violate(tag + " has free-flow time < 1 tick");
  }

  auto zone_ok = [&](int z) { return z >= 0 && z < nz; };
  std::set<ZoneLink> link_set(s.links.begin(), s.links.end());
  if (link_set.size() != s.links.size()) violate("link set contains duplicates");
  for (const auto& l : s.links) {
    const auto tag = "link (" + std::to_string(l.from) + "," + std::to_string(l.to) + ")";
    if (!zone_ok(l.from) || !zone_ok(l.to)) {
      violate(tag + " references an unknown zone");
      continue;
    }
    if (l.from == l.to) violate(tag + " is a self loop");
    double d = distance(s.zones[l.from].position, s.zones[l.to].position);
    if (d > s.link_range_m)
      violate(tag + " is " + io::format_double(d) + " m long, above the " +
              io::format_double(s.link_range_m) + " m link range");
    if (!link_set.contains({l.to, l.from})) violate(tag + " has no reverse link");
  }

  for (int r : s.recharge_sites)
    if (!zone_ok(r)) violate("recharge site " + std::to_string(r) + " is not a zone");
  if (!std::is_sorted(s.recharge_sites.begin(), s.recharge_sites.end()) ||
      std::adjacent_find(s.recharge_sites.begin(), s.recharge_sites.end()) !=
          s.recharge_sites.end())
    violate("recharge sites must be sorted and unique");

  if (s.uavs.empty()) violate("scenario has no UAVs");
  for (int i = 0; i < static_cast<int>(s.uavs.size()); ++i) {
    const auto& u = s.uavs[i];
    const auto tag = "uav " + std::to_string(u.id);
    if (u.id != i) violate("uav ids must be dense from 0");
    if (u.battery_steps < 1) violate(tag + " has battery capacity < 1 step");
    if (!s.is_recharge_site(u.home_zone)) violate(tag + " home zone is not a recharge site");
  }
  if (s.num_steps < 1) violate("num_steps must be >= 1");
  if (!(s.step_duration_s > 0.0)) violate("step_duration_s must be positive");
  if (!(s.link_range_m > 0.0)) violate("link_range_m must be positive");

  auto area_ok = [&](int a) { return a >= 0 && a < na; };
  for (const auto& e : s.area_graph.edges)
    if (!area_ok(e.from) || !area_ok(e.to))
      violate("area edge (" + std::to_string(e.from) + "," + std::to_string(e.to) +
              ") references an unknown area");
  if (s.area_graph.origins.empty()) violate("area graph has no origin");
  if (s.area_graph.destinations.empty()) violate("area graph has no destination");
  for (int o : s.area_graph.origins)
    if (!area_ok(o)) violate("origin " + std::to_string(o) + " is not an area");
  for (int d : s.area_graph.destinations)
    if (!area_ok(d)) violate("destination " + std::to_string(d) + " is not an area");

  if (!report.ok()) return report;

  // Warnings only make sense on a structurally valid instance.
  ZoneGraph graph(s);
  for (int z = 0; z < nz; ++z)
    if (graph.distance_to_site(z) == ZoneGraph::kUnreachable)
      report.warnings.push_back("zone " + std::to_string(z) +
                                " is disconnected from all recharge sites");
  if (throughput != nullptr) {
    if (throughput->num_areas() != na || throughput->num_zones() != nz) {
      report.violations.push_back("throughput matrix dimensions do not match the scenario");
    } else {
      for (int a = 0; a < na; ++a) {
        bool any = false;
        for (int z = 0; z < nz && !any; ++z) any = throughput->at(a, z) > 0.0;
        if (!any)
          report.warnings.push_back("area unreachable: area " + std::to_string(a) +
                                    " has zero throughput from every zone");
      }
    }
  }
  return report;
}

std::string scenario_to_json(const Scenario& s) {
  json j;
  j["zones"] = json::array();
  for (const auto& z : s.zones)
    j["zones"].push_back({{"id", z.id}, {"x", z.position.x}, {"y", z.position.y}});
  j["areas"] = json::array();
  for (const auto& a : s.areas)
    j["areas"].push_back({{"id", a.id},
                          {"x", a.position.x},
                          {"y", a.position.y},
                          {"length_m", a.length_m},
                          {"free_flow_ticks", a.free_flow_ticks},
                          {"storage_capacity", a.storage_capacity}});
  j["links"] = json::array();
  for (const auto& l : s.links) j["links"].push_back({l.from, l.to});
  j["recharge_sites"] = s.recharge_sites;
  j["uavs"] = json::array();
  for (const auto& u : s.uavs)
    j["uavs"].push_back(
        {{"id", u.id}, {"battery_capacity_steps", u.battery_steps}, {"home_zone", u.home_zone}});
  j["num_steps"] = s.num_steps;
  j["step_duration_s"] = s.step_duration_s;
  j["link_range_m"] = s.link_range_m;
  json g;
  g["edges"] = json::array();
  for (const auto& e : s.area_graph.edges) g["edges"].push_back({e.from, e.to});
  g["origins"] = s.area_graph.origins;
  g["destinations"] = s.area_graph.destinations;
  j["area_graph"] = std::move(g);
  return j.dump(1) + "\n";
}

Scenario scenario_from_json(const std::string& text) {
  Scenario s;
  try {
    const json j = json::parse(text);
    for (const auto& z : j.at("zones"))
      s.zones.push_back({z.at("id").get<int>(), {z.at("x").get<double>(), z.at("y").get<double>()}});
    for (const auto& a : j.at("areas")) {
      Area area;
      area.id = a.at("id").get<int>();
      area.position = {a.at("x").get<double>(), a.at("y").get<double>()};
      area.length_m = a.at("length_m").get<double>();
      area.free_flow_ticks = a.at("free_flow_ticks").get<int>();
      area.storage_capacity = a.at("storage_capacity").get<int>();
      s.areas.push_back(area);
    }
    for (const auto& l : j.at("links")) s.links.push_back({l.at(0).get<int>(), l.at(1).get<int>()});
    s.recharge_sites = j.at("recharge_sites").get<std::vector<int>>();
    for (const auto& u : j.at("uavs"))
      s.uavs.push_back({u.at("id").get<int>(), u.at("battery_capacity_steps").get<int>(),
                        u.at("home_zone").get<int>()});
    s.num_steps = j.at("num_steps").get<int>();
    s.step_duration_s = j.at("step_duration_s").get<double>();
    s.link_range_m = j.value("link_range_m", 1000.0);
    const auto& g = j.at("area_graph");
    for (const auto& e : g.at("edges"))
      s.area_graph.edges.push_back({e.at(0).get<int>(), e.at(1).get<int>()});
    s.area_graph.origins = g.at("origins").get<std::vector<int>>();
    s.area_graph.destinations = g.at("destinations").get<std::vector<int>>();
  } catch (const json::exception& e) {
    throw InputError(std::string("malformed scenario document: ") + e.what());
  }
  std::sort(s.links.begin(), s.links.end());
  std::sort(s.recharge_sites.begin(), s.recharge_sites.end());
  return s;
}

void write_scenario(const Scenario& s, const std::filesystem::path& path) {
  io::write_text(path, scenario_to_json(s));
}

Scenario read_scenario(const std::filesystem::path& path) {
  return scenario_from_json(io::read_text(path));
}

}  // namespace uavcov
