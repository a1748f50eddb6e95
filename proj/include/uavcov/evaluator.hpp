#pragma once

#include <optional>
#include <string>
#include <vector>

#include "uavcov/averaging.hpp"
#include "uavcov/linkbudget.hpp"
#include "uavcov/mobility.hpp"
#include "uavcov/plan.hpp"
#include "uavcov/scenario.hpp"

namespace uavcov {

enum class Rule {
  ActionExclusivity,       ///< no action assigned
  UnknownZone,
  CoverContinuity,         ///< covers a zone it is not in
  RechargeContinuity,      ///< recharges away from its position
  TravelContinuity,        ///< departs from a zone it is not in
  LinkMembership,          ///< travel over a pair that is not a link
  RechargeSiteMembership,  ///< recharges at a zone that is no recharge site
  BatteryWindow,           ///< more than B consecutive non-recharge steps
};

const char* to_string(Rule r);

struct Violation {
  int uav = 0;
  int step = 0;
  Rule rule = Rule::ActionExclusivity;
  std::string message;
};

std::string describe(const Violation& v);

/// Checks each UAV's action sequence starting from a recharge at its home
/// zone before step 0. After a bad action the UAV is assumed to be where the
/// action would have left it, so one mistake yields one violation. A battery
/// violation is reported once per over-long run, at its first offending step.
std::vector<Violation> check_feasibility(const Plan& p, const Scenario& s);

struct Mission {
  int uav = 0;
  int start = 0;
  int length = 0;
};

struct ActionBreakdown {
  double cover = 0.0;
  double travel = 0.0;
  double recharge = 0.0;
};

struct Metrics {
  int num_areas = 0, num_steps = 0;
  std::vector<double> mu;     ///< [a*K + k], bit/s per vehicle, 0 where N = 0
  std::vector<double> mubar;  ///< [a*K + k], 0 where N = 0
  std::vector<bool> included;  ///< N(a,k) > 0
  double objective = 0.0;      ///< min included mubar
  std::vector<double> step_total_bps;  ///< sum_a N(a,k) mu(a,k)
  std::vector<double> area_total_bits;  ///< sum_k N(a,k) mu(a,k) * step duration
  double total_bits = 0.0;
  /// Jain's index over the per-area totals of areas that ever host a vehicle;
  /// empty when all of those totals are zero.
  std::optional<double> jain;
  ActionBreakdown actions;
  std::vector<Mission> missions;
  /// Mean non-recharge steps since the previous recharge (or step 0) at each
  /// recharge; empty without recharges.
  std::optional<double> mean_replenished;
};

/// Throws InputError on dimension mismatches or an allocation that does
/// not fit the plan (phi on a UAV that is not covering that zone, or
/// spectrum budgets exceeded by more than 1e-9).
Metrics evaluate_plan(const Plan& p, const AllocationMatrix& phi, const Scenario& s,
                      const ThroughputMatrix& t, const VehicleCounts& n, const Averaging& avg);
Metrics evaluate_plan(const Plan& p, const AllocationMatrix& phi, const Scenario& s,
                      const ThroughputMatrix& t, const VehicleCounts& n, int horizon);

/// (sum x)^2 / (n sum x^2). Throws DomainError when every value is zero, the
/// list is empty, or a value is negative.
double jain_index(const std::vector<double>& values);

std::string steps_csv(const Metrics& m);
std::string areas_csv(const Metrics& m);
std::string summary_json(const Metrics& m);

/// Headline numbers read back from summary_json output.
struct Summary {
  double objective = 0.0;
  std::optional<double> jain;
  double total_bits = 0.0;
  ActionBreakdown actions;
  int missions = 0;
  double mean_mission_steps = 0.0;
  int max_mission_steps = 0;
  std::optional<double> mean_replenished;
};

Summary summarize(const Metrics& m);
Summary summary_from_json(const std::string& text);

}  // namespace uavcov
