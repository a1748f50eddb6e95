#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "uavcov/averaging.hpp"
#include "uavcov/linkbudget.hpp"
#include "uavcov/lp.hpp"
#include "uavcov/mobility.hpp"
#include "uavcov/plan.hpp"
#include "uavcov/scenario.hpp"

namespace uavcov {

/// Secondary objective used to pick among max-min optimal solutions.
enum class TieBreak {
  None,
  /// Maximize the sum of all included rolling averages.
  SumRollingThroughput,
};

struct PlanningOptions {
  Averaging averaging;
  /// For the relaxation. A second solve doubles its cost and, in practice,
  /// rounds to worse plans.
  TieBreak tiebreak = TieBreak::None;
  /// For allocate_spectrum, where it hands out spectrum the min leaves over.
  TieBreak allocation_tiebreak = TieBreak::SumRollingThroughput;
};

/// Variable and constraint counts of a built model, by family.
struct ModelStats {
  int cover_vars = 0;     ///< gamma, |D||K||Z|
  int travel_vars = 0;    ///< tau, |D||K||L|
  int recharge_vars = 0;  ///< rho, |D||K||R|
  int spectrum_vars = 0;  ///< phi, |D||K| * #{(a,z): T(a,z) > 0}
  int throughput_vars = 0;  ///< mu, one per included (a,k)
  int one_action_rows = 0;
  int cover_continuity_rows = 0;
  int recharge_continuity_rows = 0;
  int travel_continuity_rows = 0;
  int battery_rows = 0;
  int uav_spectrum_rows = 0;
  int zone_spectrum_rows = 0;
  int throughput_rows = 0;
  int objective_rows = 0;
  std::size_t nonzeros = 0;

  int total_vars() const;  ///< includes the epigraph variable t
  int total_rows() const;
};

std::string format_stats(const ModelStats& stats);

/// The relaxed scheduling LP with its variable index maps. Throughput values
/// inside the LP are divided by throughput_scale() for conditioning.
class PlanningModel {
 public:
  int num_uavs() const { return num_uavs_; }
  int num_steps() const { return num_steps_; }
  int num_zones() const { return num_zones_; }
  int num_links() const { return static_cast<int>(links_.size()); }
  int num_sites() const { return static_cast<int>(sites_.size()); }
  int num_areas() const { return num_areas_; }

  int gamma(int uav, int step, int zone) const {
    return gamma_offset_ + (uav * num_steps_ + step) * num_zones_ + zone;
  }
  int tau(int uav, int step, int link) const {
    return tau_offset_ + (uav * num_steps_ + step) * num_links() + link;
  }
  /// `site` indexes recharge_sites(), not zones.
  int rho(int uav, int step, int site) const {
    return rho_offset_ + (uav * num_steps_ + step) * num_sites() + site;
  }
  /// Areas T(a,z) > 0 can reach from `zone`, ascending.
  const std::vector<int>& served_areas(int zone) const { return served_[zone]; }
  /// Column of phi(served_areas(zone)[j], uav, step, zone).
  int phi(int uav, int step, int zone, int j) const {
    return phi_offset_ + (uav * num_steps_ + step) * pairs_per_step_ + pair_offset_[zone] + j;
  }
  /// Column of mu(a,k), or -1 when N(a,k) = 0.
  int mu(int area, int step) const { return mu_col_[area * num_steps_ + step]; }
  int epigraph() const { return t_col_; }

  const std::vector<ZoneLink>& links() const { return links_; }
  const std::vector<int>& recharge_sites() const { return sites_; }
  const ModelStats& stats() const { return stats_; }
  const lp::LinearProgram& program() const { return lp_; }
  const std::vector<double>& tiebreak_cost() const { return tiebreak_cost_; }
  const PlanningOptions& options() const { return options_; }
  double throughput_scale() const { return scale_; }
  const std::vector<double>& throughput() const { return t_; }  ///< unscaled, area-major
  const std::vector<std::int64_t>& vehicles() const { return n_; }   ///< area-major

 private:
  friend PlanningModel build_model(const Scenario&, const ThroughputMatrix&,
                                   const VehicleCounts&, const PlanningOptions&);
  int num_uavs_ = 0, num_steps_ = 0, num_zones_ = 0, num_areas_ = 0;
  int gamma_offset_ = 0, tau_offset_ = 0, rho_offset_ = 0, phi_offset_ = 0;
  int pairs_per_step_ = 0, t_col_ = -1;
  std::vector<int> pair_offset_;
  std::vector<std::vector<int>> served_;
  std::vector<int> mu_col_;
  std::vector<ZoneLink> links_;
  std::vector<int> sites_;
  ModelStats stats_;
  lp::LinearProgram lp_;
  std::vector<double> tiebreak_cost_;
  PlanningOptions options_;
  double scale_ = 1.0;
  std::vector<double> t_;
  std::vector<std::int64_t> n_;
};

/// Builds the relaxed model: action exclusivity, cover/recharge/travel
/// continuity from a virtual recharge at each home site before step 0, the
/// battery window, per-UAV and per-zone spectrum limits, per-user throughput
/// and the epigraph form of the max-min rolling-average objective. (a,k)
/// pairs with N(a,k) = 0 are left out of the objective. Throws ModelError
/// when no pair remains.
PlanningModel build_model(const Scenario& s, const ThroughputMatrix& t, const VehicleCounts& n,
                          const PlanningOptions& options);
PlanningModel build_model(const Scenario& s, const ThroughputMatrix& t, const VehicleCounts& n,
                          int horizon);

/// Optimal point of the relaxation, with throughputs back in bit/s.
struct FractionalSolution {
  int num_uavs = 0, num_steps = 0, num_zones = 0, num_areas = 0;
  std::vector<ZoneLink> links;
  std::vector<int> recharge_sites;
  std::vector<double> gamma;  ///< [(d*K + k)*Z + z]
  std::vector<double> tau;    ///< [(d*K + k)*L + link]
  std::vector<double> rho;    ///< [(d*K + k)*R + site]
  AllocationMatrix phi;
  double objective = 0.0;  ///< t*
  std::vector<double> mu;     ///< [a*K + k], 0 where excluded
  std::vector<double> mubar;  ///< [a*K + k], 0 where excluded
  std::vector<bool> included;

  double cover_value(int uav, int step, int zone) const;
  double travel_value(int uav, int step, int link) const;
  /// 0 when `zone` is not a recharge site.
  double recharge_value(int uav, int step, int zone) const;
};

/// Throws SolverError naming the violated constraint family if the LP is
/// infeasible.
FractionalSolution solve_relaxation(const PlanningModel& model);

/// Step-by-step argmax rounding restricted to actions that are reachable from
/// the realized previous position and keep a battery-safe route to a
/// recharge site. Ties: Cover > Recharge > Travel, then lowest zone id.
/// Throws RoundingError when no safe action exists.
Plan round_solution(const FractionalSolution& f, const Scenario& s);

struct SpectrumAllocation {
  AllocationMatrix allocation;
  double objective = 0.0;  ///< min included rolling average, bit/s
};

/// Max-min spectrum allocation for a fixed action plan.
SpectrumAllocation allocate_spectrum(const Plan& p, const Scenario& s, const ThroughputMatrix& t,
                                     const VehicleCounts& n, const PlanningOptions& options);

struct BruteForceLimits {
  int max_uavs = 2;
  int max_zones = 4;
  int max_steps = 6;
};

struct BruteForceResult {
  Plan plan;
  SpectrumAllocation allocation;
  std::uint64_t joint_plans = 0;         ///< feasible action plans enumerated
  std::uint64_t coverage_patterns = 0;   ///< distinct per-step covered-zone sets
  std::uint64_t allocations_solved = 0;  ///< undominated patterns solved exactly
};

/// Exact integer optimum by enumeration of every feasible plan. Plans are
/// grouped by the set of zones covered at each step (the allocation LP only
/// depends on it) and patterns dominated step-wise by another are skipped,
/// since covering more zones never lowers the optimum. Throws LimitError above
/// `limits`.
BruteForceResult brute_force_optimum(const Scenario& s, const ThroughputMatrix& t,
                                     const VehicleCounts& n, const PlanningOptions& options,
                                     const BruteForceLimits& limits = {});

/// The full relaxation strategy: build, solve, round, re-allocate.
struct RelaxationRun {
  ModelStats stats;
  double relaxation_objective = 0.0;
  Plan plan;
  SpectrumAllocation allocation;
};

RelaxationRun plan_with_relaxation(const Scenario& s, const ThroughputMatrix& t,
                                   const VehicleCounts& n, const PlanningOptions& options);

}  // namespace uavcov
