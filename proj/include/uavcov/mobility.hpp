#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "uavcov/scenario.hpp"

namespace uavcov {

struct MobilityConfig {
  std::int64_t total_vehicles = 50000;
  int tick_s = 1;
  int outflow_per_tick = 1;  ///< vehicles that may leave one segment per tick
  std::uint64_t seed = 0;
  /// 0 means every vehicle departs at tick 0; otherwise departures are drawn
  /// uniformly from [0, departure_spread_ticks).
  int departure_spread_ticks = 0;
  /// Relative demand per origin (aligned with AreaGraph::origins). Empty means
  /// an even split.
  std::vector<double> origin_weights;

  void validate(double step_duration_s) const;
};

/// N(a,k): vehicles in area a at the close of step k.
class VehicleCounts {
 public:
  VehicleCounts() = default;
  VehicleCounts(int num_areas, int num_steps);

  int num_areas() const { return num_areas_; }
  int num_steps() const { return num_steps_; }
  std::int64_t at(int area, int step) const { return data_[index(area, step)]; }
  std::int64_t& at(int area, int step) { return data_[index(area, step)]; }

  friend bool operator==(const VehicleCounts&, const VehicleCounts&) = default;

 private:
  std::size_t index(int area, int step) const {
    return static_cast<std::size_t>(area) * num_steps_ + step;
  }
  int num_areas_ = 0;
  int num_steps_ = 0;
  std::vector<std::int64_t> data_;
};

using Route = std::vector<int>;

/// Minimum free-flow-time route from each origin (aligned with
/// `graph.origins`) to its nearest destination. Ties go to the smallest next
/// area id. nullopt marks an origin that reaches no destination.
std::vector<std::optional<Route>> route_vehicles(const std::vector<Area>& areas,
                                                 const AreaGraph& graph);

/// One vehicle's stay on one segment.
struct Traversal {
  std::int64_t vehicle = 0;
  int area = 0;
  std::int64_t entry_tick = 0;
  std::int64_t exit_tick = 0;
  std::int64_t entry_seq = 0;  ///< order of entry into this segment
};

struct TickTally {
  std::int64_t in_network = 0;  ///< on a segment or waiting to enter its origin
  std::int64_t arrived = 0;
};

struct EvacuationTrace {
  std::vector<Traversal> traversals;  ///< in exit order
  std::vector<TickTally> tallies;     ///< one per simulated tick
  std::vector<std::int64_t> arrival_tick;  ///< per vehicle, -1 if still travelling
};

struct EvacuationResult {
  VehicleCounts counts;
  EvacuationTrace trace;
};

/// Queue-based mesoscopic evacuation. A vehicle leaves a segment once its
/// free-flow time has elapsed, it is at the head of the FIFO queue within the
/// per-tick outflow budget, and the next segment has a free storage slot.
/// Vehicles not yet admitted to their origin segment count toward that
/// origin's N. Throws InstanceError when an origin reaches no destination.
VehicleCounts simulate_evacuation(const Scenario& s, const MobilityConfig& cfg);

/// Same simulation, also returning per-vehicle traversals and per-tick tallies.
EvacuationResult simulate_evacuation_traced(const Scenario& s, const MobilityConfig& cfg);

std::string counts_to_csv(const VehicleCounts& n);
VehicleCounts counts_from_csv(const std::string& text);

}  // namespace uavcov
