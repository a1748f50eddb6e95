#pragma once

#include <string>
#include <vector>

#include "uavcov/scenario.hpp"

namespace uavcov {

enum class ActionType { Cover, Travel, Recharge, Unassigned };

const char* to_string(ActionType t);

/// What one UAV does during one step. For Travel, `zone` is the departure
/// zone and `to` the arrival zone; otherwise `to == zone`.
struct Action {
  ActionType type = ActionType::Unassigned;
  int zone = -1;
  int to = -1;

  static Action cover(int z) { return {ActionType::Cover, z, z}; }
  static Action travel(int from, int to) { return {ActionType::Travel, from, to}; }
  static Action recharge(int z) { return {ActionType::Recharge, z, z}; }

  /// Zone occupied when the step ends.
  int end_zone() const { return to; }
  friend bool operator==(const Action&, const Action&) = default;
};

std::string describe(const Action& a);

/// action[d][k] for every UAV d and step k.
class Plan {
 public:
  Plan() = default;
  Plan(int num_uavs, int num_steps);

  int num_uavs() const { return num_uavs_; }
  int num_steps() const { return num_steps_; }
  const Action& at(int uav, int step) const { return cells_[index(uav, step)]; }
  Action& at(int uav, int step) { return cells_[index(uav, step)]; }

  friend bool operator==(const Plan&, const Plan&) = default;

 private:
  std::size_t index(int uav, int step) const {
    return static_cast<std::size_t>(uav) * num_steps_ + step;
  }
  int num_uavs_ = 0;
  int num_steps_ = 0;
  std::vector<Action> cells_;
};

struct AllocationEntry {
  int area = 0;
  int uav = 0;
  int step = 0;
  int zone = 0;
  double phi = 0.0;
  friend bool operator==(const AllocationEntry&, const AllocationEntry&) = default;
};

/// Sparse phi(a,d,k,z): only strictly positive spectrum fractions are stored,
/// ordered by (area, uav, step, zone).
struct AllocationMatrix {
  std::vector<AllocationEntry> entries;

  /// Sorts entries and drops zeros.
  void normalize();
  double value(int area, int uav, int step, int zone) const;
  friend bool operator==(const AllocationMatrix&, const AllocationMatrix&) = default;
};

std::string plan_to_json(const Plan& p);
/// Throws InputError on malformed documents and duplicate (uav, step)
/// records; missing records are left Unassigned for the feasibility checker.
Plan plan_from_json(const std::string& text);

std::string allocation_to_csv(const AllocationMatrix& m);
AllocationMatrix allocation_from_csv(const std::string& text);

}  // namespace uavcov
