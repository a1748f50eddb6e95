#pragma once

#include <compare>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace uavcov {

class ThroughputMatrix;

struct Point2 {
  double x = 0.0;
  double y = 0.0;
  friend bool operator==(const Point2&, const Point2&) = default;
};

double distance(Point2 a, Point2 b);

/// Aerial location where a UAV can hover, cover or recharge.
struct Zone {
  int id = 0;
  Point2 position;
  friend bool operator==(const Zone&, const Zone&) = default;
};

/// Ground location hosting vehicles. Every area is also one road segment of
/// the evacuation network: it has a length, a free-flow traversal time and a
/// storage capacity.
struct Area {
  int id = 0;
  Point2 position;
  double length_m = 0.0;
  int free_flow_ticks = 1;
  int storage_capacity = 1;
  friend bool operator==(const Area&, const Area&) = default;
};

/// Ordered zone pair a UAV can fly in one step.
struct ZoneLink {
  int from = 0;
  int to = 0;
  friend auto operator<=>(const ZoneLink&, const ZoneLink&) = default;
};

struct Uav {
  int id = 0;
  int battery_steps = 1;  ///< max consecutive steps without a recharge
  int home_zone = 0;      ///< recharge site the UAV starts from
  friend bool operator==(const Uav&, const Uav&) = default;
};

struct AreaEdge {
  int from = 0;
  int to = 0;
  friend auto operator<=>(const AreaEdge&, const AreaEdge&) = default;
};

/// Directed road network among areas. Origins are flooded segments where
/// vehicles start, destinations are safe segments where they leave.
struct AreaGraph {
  std::vector<AreaEdge> edges;
  std::vector<int> origins;
  std::vector<int> destinations;
  friend bool operator==(const AreaGraph&, const AreaGraph&) = default;
};

/// Static problem instance. Links and recharge sites are kept sorted.
struct Scenario {
  std::vector<Zone> zones;
  std::vector<Area> areas;
  std::vector<ZoneLink> links;
  std::vector<int> recharge_sites;
  std::vector<Uav> uavs;
  int num_steps = 1;
  double step_duration_s = 600.0;
  double link_range_m = 1000.0;
  AreaGraph area_graph;

  bool is_recharge_site(int zone) const;
  friend bool operator==(const Scenario&, const Scenario&) = default;
};

struct GeneratorConfig {
  int zone_rows = 10;
  int zone_cols = 10;
  int num_areas = 500;
  int num_uavs = 20;
  int num_recharge_sites = 7;
  int battery_steps = 20;
  int num_steps = 150;
  double step_duration_s = 600.0;
  double link_range_m = 1000.0;
  std::uint64_t seed = 7;

  /// Reduced instance used for fast experiments: 5x5 zones, 40 areas,
  /// 4 UAVs with a 6-step battery, 30 steps.
  static GeneratorConfig desk(std::uint64_t seed = 7);

  /// Throws ConfigError naming the first offending field.
  void validate() const;
};

Scenario generate_scenario(const GeneratorConfig& config);

struct ValidationReport {
  std::vector<std::string> violations;
  std::vector<std::string> warnings;
  bool ok() const { return violations.empty(); }
};

/// Checks every structural invariant of `s`. When `throughput` is given,
/// also warns about areas no zone can serve.
ValidationReport validate_scenario(const Scenario& s,
                                   const ThroughputMatrix* throughput = nullptr);

std::string scenario_to_json(const Scenario& s);
Scenario scenario_from_json(const std::string& text);
void write_scenario(const Scenario& s, const std::filesystem::path& path);
Scenario read_scenario(const std::filesystem::path& path);

}  // namespace uavcov
